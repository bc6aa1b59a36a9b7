"""Text syntax for series and for polynomials with series coefficients.

Series print as ``c1*t^(a1/b1) + c2*t^(a2/b2) + O(t^(a/b))`` and the parser
accepts that format plus general arithmetic: ``+ - * / ^``, parentheses,
``O(...)``, rational exponents on the series variable (``t^(1/2)``) and
integer powers of anything invertible.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError
from .fields import QQ
from .series import PuiseuxSeries

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][0-9]*)|(\S))")


def _tokens(text):
    out, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot tokenize {text[pos:]!r}")
        num, name, sym = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        elif sym in "+-*/^()":
            out.append(("sym", sym))
        else:
            raise ParseError(f"unexpected character {sym!r}")
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            raise ParseError(f"unexpected {tok[1]!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        node = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek() in (("sym", "*"), ("sym", "/")):
            op = self.take()[1]
            node = ("mul" if op == "*" else "div", node, self.unary())
        return node

    def unary(self):
        if self.peek() == ("sym", "-"):
            self.take()
            return ("neg", self.unary())
        if self.peek() == ("sym", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            return ("pow", base, self.exponent())
        return base

    def exponent(self):
        if self.peek() == ("sym", "("):
            self.take()
            sign = -1 if self.peek() == ("sym", "-") and self.take() else 1
            num = self.take("num")[1]
            den = 1
            if self.peek() == ("sym", "/"):
                self.take()
                den = self.take("num")[1]
            self.take("sym", ")")
            return Fraction(sign * num, den)
        sign = -1 if self.peek() == ("sym", "-") and self.take() else 1
        return Fraction(sign * self.take("num")[1])

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return ("num", val)
        if kind == "name":
            self.take()
            if val == "O" and self.peek() == ("sym", "("):
                self.take()
                inner = self.expr()
                self.take("sym", ")")
                return ("bigO", inner)
            return ("name", val)
        if (kind, val) == ("sym", "("):
            self.take()
            node = self.expr()
            self.take("sym", ")")
            return node
        raise ParseError(f"unexpected {val!r} in {self.text!r}")


def parse_ast(text):
    return _Parser(text).parse()


def _generators(field):
    out = {}
    for k in field.tower():
        if hasattr(k, "gen"):
            out[k.name] = k.gen()
    return out


def _eval_series(node, field, var, rel_prec, gens):
    kind = node[0]
    rec = lambda n: _eval_series(n, field, var, rel_prec, gens)  # noqa: E731
    if kind == "num":
        return PuiseuxSeries.constant(field.coerce(node[1]), field, var=var)
    if kind == "name":
        if node[1] == var:
            return PuiseuxSeries.monomial(field.one(), 1, field, var=var)
        if node[1] in gens:
            return PuiseuxSeries.constant(field.coerce(gens[node[1]]), field, var=var)
        raise ParseError(f"unknown name {node[1]!r}")
    if kind == "bigO":
        inner = rec(node[1])
        if not inner.terms:
            raise ParseError("O() of zero")
        return PuiseuxSeries.big_o(inner.valuation(), field, var)
    if kind == "neg":
        return -rec(node[1])
    if kind in ("add", "sub", "mul"):
        a, b = rec(node[1]), rec(node[2])
        return a + b if kind == "add" else a - b if kind == "sub" else a * b
    if kind == "div":
        a, b = rec(node[1]), rec(node[2])
        return a * b.invert(rel_prec)
    if kind == "pow":
        base, q = rec(node[1]), node[2]
        if q.denominator == 1:
            n = int(q)
            return base.invert(rel_prec) ** (-n) if n < 0 else base ** n
        return base.monomial_power(q)
    raise ParseError(f"unknown node {kind}")


def parse_series(text, field=QQ, var="t", rel_prec=None) -> PuiseuxSeries:
    """Parse the printed format (or any arithmetic expression in ``var``)."""
    return _eval_series(parse_ast(text), field, var, rel_prec, _generators(field))


# polynomials in y with series coefficients: lists, lowest degree first


def _padd(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = x * y + out[i + j]
    return out


def _eval_ypoly(node, field, var, yvar, rel_prec, gens):
    kind = node[0]
    rec = lambda n: _eval_ypoly(n, field, var, yvar, rel_prec, gens)  # noqa: E731
    if kind == "name" and node[1] == yvar:
        return [PuiseuxSeries(field, [], None, var), PuiseuxSeries.constant(field.one(), field, var=var)]
    if kind in ("num", "name", "bigO"):
        return [_eval_series(node, field, var, rel_prec, gens)]
    if kind == "neg":
        return [-c for c in rec(node[1])]
    if kind == "add":
        return _padd(rec(node[1]), rec(node[2]))
    if kind == "sub":
        return _padd(rec(node[1]), [-c for c in rec(node[2])])
    if kind == "mul":
        return _pmul(rec(node[1]), rec(node[2]))
    if kind == "div":
        num, den = rec(node[1]), rec(node[2])
        if len(den) != 1:
            raise ParseError(f"cannot divide by a polynomial in {yvar}")
        inv = den[0].invert(rel_prec)
        return [c * inv for c in num]
    if kind == "pow":
        base, q = rec(node[1]), node[2]
        if len(base) == 1:
            return [_eval_series(node, field, var, rel_prec, gens)]
        if q.denominator != 1 or q < 0:
            raise ParseError(f"powers of {yvar}-polynomials must be non-negative integers")
        out = [PuiseuxSeries.constant(field.one(), field, var=var)]
        for _ in range(int(q)):
            out = _pmul(out, base)
        return out
    raise ParseError(f"unknown node {kind}")


def parse_ypoly(text, field=QQ, var="t", yvar="y", rel_prec=None):
    """Coefficient list (lowest degree first) of a polynomial in ``yvar``."""
    coeffs = _eval_ypoly(parse_ast(text), field, var, yvar, rel_prec, _generators(field))
    coeffs = [c if isinstance(c, PuiseuxSeries) else PuiseuxSeries.constant(field.coerce(c), field, var=var) for c in coeffs]
    while len(coeffs) > 1 and coeffs[-1].is_zero() and coeffs[-1].trunc is None:
        coeffs.pop()
    return coeffs
