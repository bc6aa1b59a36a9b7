"""Sparse multivariate polynomials over Q or F_p, plus the text syntax.

Monomials are tuples of ``(variable, exponent)`` pairs sorted by variable
name, so a polynomial does not depend on any ambient variable ordering.
Coefficients are :class:`fractions.Fraction` over Q and ints in ``[0, p)``
over F_p.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import gcd

from .._arith import is_prime, lcm_all
from ..errors import ParseError

VARIABLE_RE = re.compile(r"[a-z][0-9]*\Z")


@dataclass(frozen=True)
class BaseField:
    """Q (``p = 0``) or the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p and not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def kind(self):
        return "rational" if self.p == 0 else "prime-field"

    def __str__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    def coerce(self, x):
        if self.p == 0:
            return Fraction(x)
        if isinstance(x, Fraction) or (isinstance(x, str) and "/" in x):
            q = Fraction(x)
            if q.denominator % self.p == 0:
                raise ZeroDivisionError(f"{q} has no image in GF({self.p})")
            return q.numerator * pow(q.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def add(self, a, b):
        return a + b if self.p == 0 else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p == 0 else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p == 0 else (a * b) % self.p

    def neg(self, a):
        return -a if self.p == 0 else (-a) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a if self.p == 0 else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, n):
        if self.p == 0:
            return a ** n
        if n < 0:
            a, n = self.inv(a), -n
        return pow(a, n, self.p)

    def format(self, a):
        return str(a)


def _var_key(name):
    return tuple(-ord(ch) for ch in name) + (0,)


def monomial_key(mono):
    """Graded-lex key: larger key means larger monomial (a > b > ... > z)."""
    return (sum(e for _, e in mono), tuple((_var_key(v), e) for v, e in mono))


def _mono_mul(a, b):
    out = dict(a)
    for v, e in b:
        out[v] = out.get(v, 0) + e
    return tuple(sorted((v, e) for v, e in out.items() if e))


class Poly:
    """Immutable sparse polynomial."""

    __slots__ = ("field", "_terms", "_hash")

    def __init__(self, field: BaseField, terms=None):
        self.field = field
        clean = {}
        for mono, c in (terms or {}).items():
            c = field.coerce(c)
            if c != 0:
                mono = tuple(sorted((v, e) for v, e in mono if e))
                clean[mono] = field.add(clean.get(mono, field.zero()), c)
                if clean[mono] == 0:
                    del clean[mono]
        self._terms = clean
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def const(cls, field, c):
        return cls(field, {(): c})

    @classmethod
    def var(cls, field, name):
        if not VARIABLE_RE.match(name):
            raise ParseError(f"bad variable name {name!r}")
        return cls(field, {((name, 1),): 1})

    @classmethod
    def from_univariate(cls, field, var, coeffs):
        return cls(field, {((var, i),) if i else (): c for i, c in enumerate(coeffs) if c != 0})

    def _lift(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                raise ValueError("polynomials over different fields")
            return other
        return Poly.const(self.field, other)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = self.field.add(terms.get(m, self.field.zero()), c)
        return Poly(self.field, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, {m: self.field.neg(c) for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        f = self.field
        terms = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                terms[m] = f.add(terms.get(m, f.zero()), f.mul(c1, c2))
        return Poly(f, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be non-negative ints")
        out, base = Poly.const(self.field, 1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c):
        c = self.field.coerce(c)
        return Poly(self.field, {m: self.field.mul(c, v) for m, v in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.field, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # inspection -------------------------------------------------------
    @property
    def terms(self):
        return dict(self._terms)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return all(m == () for m in self._terms)

    def constant_value(self):
        return self._terms.get((), self.field.zero())

    def variables(self):
        return tuple(sorted({v for m in self._terms for v, _ in m}))

    def total_degree(self):
        return max((sum(e for _, e in m) for m in self._terms), default=-1)

    def degree_in(self, var):
        return max((dict(m).get(var, 0) for m in self._terms), default=-1)

    def sorted_terms(self):
        """Terms in decreasing graded-lex order."""
        return sorted(self._terms.items(), key=lambda mc: monomial_key(mc[0]), reverse=True)

    def leading_term(self):
        return self.sorted_terms()[0]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def sort_key(self):
        return (
            self.total_degree(),
            tuple((monomial_key(m), c) for m, c in self.sorted_terms()),
        )

    # evaluation -------------------------------------------------------
    def substitute(self, assignment):
        """Replace variables by field values or polynomials."""
        f = self.field
        out = Poly(f)
        for mono, c in self._terms.items():
            term = Poly.const(f, c)
            rest = []
            for v, e in mono:
                if v in assignment:
                    val = assignment[v]
                    term = term * (val ** e if isinstance(val, Poly) else Poly.const(f, f.power(f.coerce(val), e)))
                else:
                    rest.append((v, e))
            out = out + term * Poly(f, {tuple(rest): 1})
        return out

    def evaluate(self, assignment):
        res = self.substitute(assignment)
        if not res.is_constant():
            raise ValueError(f"variables {res.variables()} left unassigned")
        return res.constant_value()

    def to_univariate(self, var=None):
        """Dense low-to-high coefficient list in ``var``."""
        vs = self.variables()
        if var is None:
            if len(vs) > 1:
                raise ValueError("not univariate")
            var = vs[0] if vs else "t"
        if any(v != var for v in vs):
            raise ValueError(f"polynomial involves variables other than {var}")
        d = max(self.degree_in(var), 0)
        coeffs = [self.field.zero()] * (d + 1)
        for mono, c in self._terms.items():
            coeffs[dict(mono).get(var, 0)] = c
        return coeffs

    def derivative(self, var):
        f = self.field
        terms = {}
        for mono, c in self._terms.items():
            e = dict(mono).get(var, 0)
            if e:
                new = tuple((v, k - 1 if v == var else k) for v, k in mono)
                terms[new] = f.mul(f.coerce(e), c)
        return Poly(f, terms)

    # normalisation ----------------------------------------------------
    def normalize(self):
        """Return ``(unit, q)`` with ``self == unit * q``.

        Over Q, ``q`` has coprime integer coefficients and positive leading
        coefficient; over F_p, ``q`` is monic.  Leading means graded-lex.
        """
        if self.is_zero():
            raise ZeroDivisionError("cannot normalise 0")
        f = self.field
        lc = self.leading_coefficient()
        if f.p:
            return lc, self.scale(f.inv(lc))
        coeffs = list(self._terms.values())
        den = lcm_all(c.denominator for c in coeffs)
        num = 0
        for c in coeffs:
            num = gcd(num, int(c * den))
        unit = Fraction(num, den)
        if lc < 0:
            unit = -unit
        return unit, self.scale(1 / unit)

    # text ---------------------------------------------------------------
    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for mono, c in self.sorted_terms():
            mono_txt = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)
            neg = self.field.p == 0 and c < 0
            mag = -c if neg else c
            if not mono_txt:
                body = str(mag)
            elif mag == 1:
                body = mono_txt
            else:
                body = f"{mag}*{mono_txt}"
            pieces.append(("-" if neg else "+", body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += sign + body
        return out

    def __repr__(self):
        return f"Poly({self.field}, {str(self)!r})"

    # sympy bridge (used for multivariate gcd / irreducibility checks) ---
    def to_sympy(self, gens=None):
        import sympy

        names = gens or self.variables()
        syms = sympy.symbols(names) if names else ()
        if len(names) == 1:
            syms = (syms,) if not isinstance(syms, (tuple, list)) else syms
        expr = sympy.Integer(0)
        for mono, c in self._terms.items():
            term = sympy.Rational(c.numerator, c.denominator) if self.field.p == 0 else sympy.Integer(c)
            for v, e in mono:
                term *= sympy.Symbol(v) ** e
            expr += term
        kwargs = {"modulus": self.field.p} if self.field.p else {"domain": "QQ"}
        if not names:
            return expr
        return sympy.Poly(expr, *[sympy.Symbol(n) for n in names], **kwargs)

    @classmethod
    def from_sympy(cls, field, spoly):
        gens = [str(g) for g in spoly.gens]
        terms = {}
        for exps, c in spoly.terms():
            mono = tuple((g, e) for g, e in zip(gens, exps) if e)
            if field.p:
                c = int(c) % field.p
            else:
                c = Fraction(int(c.p), int(c.q)) if hasattr(c, "q") else Fraction(str(c))
            terms[mono] = c
        return cls(field, terms)


def compare_polys(a: Poly, b: Poly):
    ka, kb = a.sort_key(), b.sort_key()
    return (ka > kb) - (ka < kb)


poly_order = cmp_to_key(compare_polys)


# ---------------------------------------------------------------------------
# text syntax: variables [a-z][0-9]*, integer (or a/b) literals, + - * ^ ( )

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([a-z][0-9]*)|(\S))")


def tokenize(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot tokenize {text[pos:]!r}")
        num, name, sym = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("var", name))
        else:
            if sym not in "+-*^()/":
                raise ParseError(f"unexpected character {sym!r}")
            out.append(("sym", sym))
        pos = m.end()
    return out


class _Parser:
    """Recursive descent over the token list producing a small AST."""

    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"unexpected token {tok[1]!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        node = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return node

    def expr(self):
        terms = [self.term()]
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            t = self.term()
            terms.append(t if op == "+" else ("neg", t))
        return terms[0] if len(terms) == 1 else ("add", terms)

    def term(self):
        factors = [self.unary()]
        while self.peek() == ("sym", "*"):
            self.take()
            factors.append(self.unary())
        return factors[0] if len(factors) == 1 else ("mul", factors)

    def unary(self):
        if self.peek() == ("sym", "-"):
            self.take()
            return ("neg", self.unary())
        return self.power()

    def signed_exponent(self):
        if self.peek() == ("sym", "("):
            self.take()
            e = self.rational(allow_sign=True)
            self.take("sym", ")")
            return e
        return self.rational(allow_sign=True, allow_slash=False)

    def rational(self, allow_sign=False, allow_slash=True):
        sign = 1
        if allow_sign and self.peek() == ("sym", "-"):
            self.take()
            sign = -1
        n = self.take("num")[1]
        if allow_slash and self.peek() == ("sym", "/"):
            self.take()
            return Fraction(sign * n, self.take("num")[1])
        return Fraction(sign * n)

    def power(self):
        base = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            return ("pow", base, self.signed_exponent())
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            return ("num", self.rational())
        if kind == "var":
            self.take()
            return ("var", val)
        if (kind, val) == ("sym", "("):
            self.take()
            node = self.expr()
            self.take("sym", ")")
            return node
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_ast(text):
    return _Parser(text).parse()


def ast_to_poly(node, field):
    kind = node[0]
    if kind == "num":
        return Poly.const(field, node[1])
    if kind == "var":
        return Poly.var(field, node[1])
    if kind == "neg":
        return -ast_to_poly(node[1], field)
    if kind == "add":
        out = Poly(field)
        for child in node[1]:
            out = out + ast_to_poly(child, field)
        return out
    if kind == "mul":
        out = Poly.const(field, 1)
        for child in node[1]:
            out = out * ast_to_poly(child, field)
        return out
    if kind == "pow":
        e = node[2]
        if e.denominator != 1 or e < 0:
            raise ParseError("expanded polynomials only allow non-negative integer exponents")
        return ast_to_poly(node[1], field) ** int(e)
    raise ParseError(f"unknown node {kind}")


def parse_poly(text, field: BaseField = BaseField(0)) -> Poly:
    """Parse expanded syntax such as ``"t^3+2*t+1"``."""
    return ast_to_poly(parse_ast(text), field)
