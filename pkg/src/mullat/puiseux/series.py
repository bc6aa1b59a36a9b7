"""Truncated generalised power series in one variable.

A series is a finite list of terms ``c * t^e`` (rational ``e``, increasing)
plus a truncation order: everything at exponent ``>= trunc`` is unknown.
``trunc = None`` marks an exact finite sum.  Operations compute the
precision they can actually guarantee.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .._arith import strip_prime
from ..errors import NotInValuationRing, PrecisionError, ZeroInput
from .fields import QQ, common_field, field_of

DEFAULT_RELATIVE_PRECISION = 16
INF = float("inf")


def _min_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class PuiseuxSeries:
    __slots__ = ("field", "terms", "trunc", "var")

    def __init__(self, field=QQ, terms=(), trunc=None, var="t"):
        self.field = field
        self.var = var
        trunc = None if trunc is None else Fraction(trunc)
        acc = {}
        for e, c in terms:
            e = Fraction(e)
            if trunc is not None and e >= trunc:
                continue
            c = field.coerce(c)
            acc[e] = acc[e] + c if e in acc else c
        self.terms = tuple((e, c) for e, c in sorted(acc.items()) if c)
        self.trunc = trunc

    # construction -----------------------------------------------------
    @classmethod
    def constant(cls, c, field=None, trunc=None, var="t"):
        field = field or field_of(c)
        return cls(field, [(0, c)], trunc, var)

    @classmethod
    def monomial(cls, c, e, field=None, trunc=None, var="t"):
        field = field or field_of(c)
        return cls(field, [(e, c)], trunc, var)

    @classmethod
    def big_o(cls, e, field=QQ, var="t"):
        return cls(field, [], e, var)

    def with_field(self, field):
        if field == self.field:
            return self
        return PuiseuxSeries(field, [(e, field.coerce(c)) for e, c in self.terms], self.trunc, self.var)

    def truncate(self, trunc):
        return PuiseuxSeries(self.field, self.terms, _min_trunc(self.trunc, trunc), self.var)

    def exact(self):
        """The same terms with the truncation dropped."""
        return PuiseuxSeries(self.field, self.terms, None, self.var)

    # inspection -------------------------------------------------------
    def is_zero(self):
        """No known nonzero term (the zero series within the window)."""
        return not self.terms

    def is_exact(self):
        return self.trunc is None

    def valuation(self):
        """Least exponent, ``inf`` for the exact zero, ``trunc`` as a lower bound otherwise.

        For a truncated series with no known terms the valuation is only
        known to be ``>= trunc``; that bound is returned.
        """
        if self.terms:
            return self.terms[0][0]
        return INF if self.trunc is None else self.trunc

    def leading(self):
        if not self.terms:
            raise ZeroInput("zero series has no leading term")
        return self.terms[0]

    def coefficient(self, e):
        e = Fraction(e)
        if self.trunc is not None and e >= self.trunc:
            raise PrecisionError(f"coefficient of t^{e} is beyond O(t^{self.trunc})")
        for x, c in self.terms:
            if x == e:
                return c
        return self.field.zero()

    @property
    def ram(self):
        """Smallest ``m`` with ``m * support`` inside E_p (the Rayner witness)."""
        p = self.field.char
        dens = [e.denominator for e, _ in self.terms]
        if self.trunc is not None:
            dens.append(self.trunc.denominator)
        return lcm(*[strip_prime(d, p) if p else d for d in dens]) if dens else 1

    def _lift(self, other):
        if not isinstance(other, PuiseuxSeries):
            other = PuiseuxSeries.constant(other, common_field(self.field, field_of(other, self.field)), var=self.var)
        if other.var != self.var:
            raise ValueError("series in different variables")
        K = common_field(self.field, other.field)
        return self.with_field(K), other.with_field(K)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        a, b = self._lift(other)
        return PuiseuxSeries(a.field, a.terms + b.terms, _min_trunc(a.trunc, b.trunc), a.var)

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries(self.field, [(e, -c) for e, c in self.terms], self.trunc, self.var)

    def __sub__(self, other):
        a, b = self._lift(other)
        return a + (-b)

    def __rsub__(self, other):
        a, b = self._lift(other)
        return b - a

    def __mul__(self, other):
        a, b = self._lift(other)
        va, vb = a.valuation(), b.valuation()
        trunc = None
        if a.trunc is not None:
            trunc = a.trunc + vb if vb != INF else None
        if b.trunc is not None:
            t2 = b.trunc + va if va != INF else None
            trunc = _min_trunc(trunc, t2)
        if (a.trunc is not None or b.trunc is not None) and trunc is None:
            # exact zero times a truncated series
            return PuiseuxSeries(a.field, [], None, a.var)
        acc = {}
        for ea, ca in a.terms:
            for eb, cb in b.terms:
                e = ea + eb
                if trunc is not None and e >= trunc:
                    continue
                acc[e] = acc[e] + ca * cb if e in acc else ca * cb
        return PuiseuxSeries(a.field, acc.items(), trunc, a.var)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            return self.monomial_power(Fraction(n))
        if n < 0:
            return self.invert() ** (-n)
        out = PuiseuxSeries.constant(self.field.one(), self.field, var=self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def monomial_power(self, q):
        """``(c t^e)^q`` for an exact monomial with ``c`` a q-th power (``c = 1`` here)."""
        if len(self.terms) != 1 or self.trunc is not None:
            raise ValueError("rational powers are only defined for exact monomials here")
        (e, c), = self.terms
        if q.denominator != 1 and c != self.field.one():
            raise ValueError("rational power of a non-unit coefficient")
        return PuiseuxSeries(self.field, [(e * q, c ** q.numerator if q.denominator == 1 else c)], None, self.var)

    def invert(self, rel_prec=None):
        """``1 / self``.

        Truncated input ``c t^v (1 + u) + O(t^T)`` gives ``O(t^(T - 2v))``;
        an exact non-monomial is expanded to ``rel_prec`` (default
        :data:`DEFAULT_RELATIVE_PRECISION`) beyond its valuation.
        """
        if not self.terms:
            raise ZeroInput("cannot invert the zero series")
        v, c = self.terms[0]
        cinv = 1 / c
        if len(self.terms) == 1 and self.trunc is None:
            return PuiseuxSeries(self.field, [(-v, cinv)], None, self.var)
        if self.trunc is not None:
            rel = self.trunc - v
        else:
            rel = Fraction(rel_prec if rel_prec is not None else DEFAULT_RELATIVE_PRECISION)
        # u = self / (c t^v) - 1, valuation > 0
        u = PuiseuxSeries(self.field, [(e - v, x * cinv) for e, x in self.terms[1:]], rel, self.var)
        out = PuiseuxSeries(self.field, [(0, self.field.one())], rel, self.var)
        power = PuiseuxSeries(self.field, [(0, self.field.one())], rel, self.var)
        while True:
            power = (power * (-u)).truncate(rel)
            if power.is_zero():
                break
            out = out + power
        return PuiseuxSeries(self.field, [(e - v, x * cinv) for e, x in out.terms], rel - v, self.var)

    def __truediv__(self, other):
        a, b = self._lift(other)
        return a * b.invert()

    def __rtruediv__(self, other):
        a, b = self._lift(other)
        return b * a.invert()

    def __eq__(self, other):
        if not isinstance(other, PuiseuxSeries):
            try:
                other = self._lift(other)[1]
            except (TypeError, ValueError):
                return NotImplemented
        a, b = self._lift(other)
        return a.terms == b.terms and a.trunc == b.trunc

    def __hash__(self):
        return hash((self.terms, self.trunc))

    def equal_to_precision(self, other):
        """Agreement on the common window of known terms."""
        a, b = self._lift(other)
        diff = a - b
        return diff.is_zero()

    # place ------------------------------------------------------------
    def residue(self):
        """The residue map: coefficient of ``t^0`` on the valuation ring."""
        v = self.valuation()
        if self.terms and v < 0:
            raise NotInValuationRing(f"valuation {v} < 0")
        if self.trunc is not None and self.trunc <= 0:
            raise PrecisionError("the constant term is beyond the truncation")
        return self.coefficient(0)

    def coefficients_in(self, subfield):
        return all(c in subfield for _, c in self.terms)

    # text -------------------------------------------------------------
    def __str__(self):
        return format_series(self)

    def __repr__(self):
        return f"PuiseuxSeries({format_series(self)!r})"


def _fmt_exp(e: Fraction, var):
    if e == 1:
        return var
    if e.denominator == 1 and e > 0:
        return f"{var}^{e.numerator}"
    return f"{var}^({e})"


def _fmt_coeff(field, c):
    txt = field.format(c)
    neg = False
    if txt.startswith("-") and all(ch not in txt[1:] for ch in "+-"):
        neg, txt = True, txt[1:]
    if any(ch in txt for ch in "+-") and not (txt.startswith("(") and txt.endswith(")")):
        txt = f"({txt})"
    return neg, txt


def format_series(s: PuiseuxSeries):
    pieces = []
    for e, c in s.terms:
        neg, txt = _fmt_coeff(s.field, c)
        if e == 0:
            body = txt
        elif txt == "1":
            body = _fmt_exp(e, s.var)
        else:
            body = f"{txt}*{_fmt_exp(e, s.var)}"
        pieces.append((neg, body))
    if s.trunc is not None:
        pieces.append((False, "O(1)" if s.trunc == 0 else f"O({_fmt_exp(s.trunc, s.var)})"))
    if not pieces:
        return "0"
    neg, body = pieces[0]
    out = ("-" if neg else "") + body
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out
