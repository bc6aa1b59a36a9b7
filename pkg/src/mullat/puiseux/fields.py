"""Coefficient fields for series: Q, F_p and finite towers of simple extensions.

An extension ``K[z]/(g)`` stores elements as coefficient tuples over ``K``;
towers are never flattened, so an element of a lower field coerces into a
higher one by padding.  Absolute coordinates over the prime field are
available for linear algebra (subfield membership).
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .._arith import is_prime


class FpElt:
    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _co(self, o):
        if isinstance(o, FpElt):
            if o.p != self.p:
                raise ValueError("elements of different prime fields")
            return o.v
        if isinstance(o, int):
            return o % self.p
        if isinstance(o, Fraction):
            return o.numerator * pow(o.denominator, -1, self.p) % self.p
        return None

    def __add__(self, o):
        x = self._co(o)
        return NotImplemented if x is None else FpElt(self.v + x, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        x = self._co(o)
        return NotImplemented if x is None else FpElt(self.v - x, self.p)

    def __rsub__(self, o):
        x = self._co(o)
        return NotImplemented if x is None else FpElt(x - self.v, self.p)

    def __mul__(self, o):
        x = self._co(o)
        return NotImplemented if x is None else FpElt(self.v * x, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElt(-self.v, self.p)

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("inverse of 0")
        return FpElt(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, o):
        x = self._co(o)
        if x is None:
            return NotImplemented
        return self * FpElt(x, self.p).inverse()

    def __rtruediv__(self, o):
        x = self._co(o)
        return NotImplemented if x is None else FpElt(x, self.p) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return FpElt(pow(self.v, n, self.p), self.p)

    def __eq__(self, o):
        x = self._co(o)
        return NotImplemented if x is None else self.v == x

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return str(self.v)


class RationalField:
    char = 0
    degree = 1
    is_finite = False
    base = None
    depth = 0

    def coerce(self, x):
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return Fraction(x)
        if isinstance(x, Rational):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"{x!r} is not a rational number")

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def to_vector(self, x):
        return [Fraction(x)]

    def from_vector(self, v):
        return Fraction(v[0])

    def tower(self):
        return [self]

    def format(self, x):
        return str(x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    degree = 1
    is_finite = True
    base = None
    depth = 0

    def __init__(self, p):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.char = p

    @property
    def order(self):
        return self.char

    def coerce(self, x):
        if isinstance(x, FpElt):
            if x.p != self.char:
                raise ValueError("element of a different prime field")
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.char == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.char})")
            return FpElt(x.numerator * pow(x.denominator, -1, self.char), self.char)
        if isinstance(x, int):
            return FpElt(x, self.char)
        raise TypeError(f"{x!r} is not in GF({self.char})")

    def zero(self):
        return FpElt(0, self.char)

    def one(self):
        return FpElt(1, self.char)

    def to_vector(self, x):
        return [self.coerce(x).v]

    def from_vector(self, v):
        return FpElt(int(v[0]), self.char)

    def random_element(self, rng):
        return FpElt(rng.randrange(self.char), self.char)

    def tower(self):
        return [self]

    def format(self, x):
        return str(self.coerce(x).v)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.char == self.char

    def __hash__(self):
        return hash(("GF", self.char))

    def __repr__(self):
        return f"GF({self.char})"


class AlgElt:
    """Element of ``base[z]/(g)`` as a tuple of base-field coefficients."""

    __slots__ = ("field", "c")

    def __init__(self, field, coeffs):
        self.field = field
        self.c = tuple(coeffs)

    def _pair(self, o):
        """``(x, y)`` in a common field, or ``None``.

        Both operands are ``AlgElt`` when one lives higher in a tower, so the
        reflected operator would never be tried; lift explicitly instead.
        """
        if isinstance(o, AlgElt) and o.field != self.field and self.field in o.field.tower():
            return o.field.coerce(self), o
        try:
            return self, self.field.coerce(o)
        except (TypeError, ValueError):
            return None

    def __add__(self, o):
        pr = self._pair(o)
        if pr is None:
            return NotImplemented
        x, y = pr
        return AlgElt(x.field, [a + b for a, b in zip(x.c, y.c)])

    __radd__ = __add__

    def __neg__(self):
        return AlgElt(self.field, [-a for a in self.c])

    def __sub__(self, o):
        pr = self._pair(o)
        if pr is None:
            return NotImplemented
        x, y = pr
        return AlgElt(x.field, [a - b for a, b in zip(x.c, y.c)])

    def __rsub__(self, o):
        pr = self._pair(o)
        if pr is None:
            return NotImplemented
        x, y = pr
        return AlgElt(x.field, [b - a for a, b in zip(x.c, y.c)])

    def __mul__(self, o):
        if isinstance(o, (int, Fraction, FpElt)) or (
            isinstance(o, AlgElt) and o.field != self.field and o.field in self.field.tower()
        ):
            s = self.field.base.coerce(o)
            return AlgElt(self.field, [a * s for a in self.c])
        pr = self._pair(o)
        if pr is None:
            return NotImplemented
        x, y = pr
        if x.field != self.field:
            return y * x
        return self.field.mul(x, y)

    __rmul__ = __mul__

    def inverse(self):
        return self.field.inv(self)

    def __truediv__(self, o):
        pr = self._pair(o)
        if pr is None:
            return NotImplemented
        x, y = pr
        return x * y.inverse()

    def __rtruediv__(self, o):
        pr = self._pair(o)
        if pr is None:
            return NotImplemented
        x, y = pr
        return y * x.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = self.field.one(), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, o):
        pr = self._pair(o)
        if pr is None:
            return NotImplemented
        x, y = pr
        return x.c == y.c

    def __hash__(self):
        if all(not a for a in self.c[1:]):
            return hash(self.c[0])
        return hash(self.c)

    def __bool__(self):
        return any(bool(a) for a in self.c)

    def __repr__(self):
        return self.field.format(self)


def _poly_str(coeffs, name, base):
    pieces = []
    for i in range(len(coeffs) - 1, -1, -1):
        a = coeffs[i]
        if not a:
            continue
        txt = base.format(a)
        needs_paren = isinstance(a, AlgElt) and sum(1 for x in a.c if x) > 1
        if needs_paren:
            txt = f"({txt})"
        mono = "" if i == 0 else (name if i == 1 else f"{name}^{i}")
        if not mono:
            body = txt
        elif txt == "1":
            body = mono
        elif txt == "-1":
            body = "-" + mono
        else:
            body = f"{txt}*{mono}"
        pieces.append(body)
    if not pieces:
        return "0"
    out = pieces[0]
    for b in pieces[1:]:
        out += b if b.startswith("-") else "+" + b
    return out


class ExtensionField:
    """``base[name]/(modulus)`` with ``modulus`` monic and irreducible over ``base``."""

    def __init__(self, base, modulus, name=None):
        self.base = base
        mod = [base.coerce(a) for a in modulus]
        if mod[-1] != base.one():
            inv = 1 / mod[-1]
            mod = [a * inv for a in mod]
        if len(mod) < 3:
            raise ValueError("extension modulus must have degree >= 2")
        self.modulus = tuple(mod)
        self.d = len(mod) - 1
        self.depth = base.depth + 1
        self.name = name or f"a{self.depth}"
        self.char = base.char
        self.degree = base.degree * self.d
        self.is_finite = base.is_finite

    @property
    def order(self):
        return self.char ** self.degree

    def tower(self):
        return self.base.tower() + [self]

    def zero(self):
        z = self.base.zero()
        return AlgElt(self, [z] * self.d)

    def one(self):
        return self.coerce(1)

    def gen(self):
        c = [self.base.zero()] * self.d
        c[1] = self.base.one()
        return AlgElt(self, c)

    def coerce(self, x):
        if isinstance(x, AlgElt) and x.field == self:
            return x
        if isinstance(x, AlgElt) and x.field not in self.base.tower():
            raise ValueError(f"{x!r} does not lie in {self!r}")
        b = self.base.coerce(x)
        return AlgElt(self, [b] + [self.base.zero()] * (self.d - 1))

    def from_base_poly(self, coeffs):
        """Class of a polynomial over the base in the generator."""
        coeffs = [self.base.coerce(a) for a in coeffs]
        return AlgElt(self, self._reduce(coeffs))

    def _reduce(self, coeffs):
        coeffs = list(coeffs)
        mod, d = self.modulus, self.d
        for i in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[i]
            if c:
                for j in range(d):
                    coeffs[i - d + j] = coeffs[i - d + j] - c * mod[j]
            coeffs[i] = self.base.zero()
        coeffs = coeffs[:d]
        while len(coeffs) < d:
            coeffs.append(self.base.zero())
        return coeffs

    def mul(self, a, b):
        prod = [self.base.zero()] * (2 * self.d - 1)
        for i, x in enumerate(a.c):
            if x:
                for j, y in enumerate(b.c):
                    if y:
                        prod[i + j] = prod[i + j] + x * y
        return AlgElt(self, self._reduce(prod))

    def inv(self, a):
        from .upoly import xgcd

        if not a:
            raise ZeroDivisionError("inverse of 0")
        g, s, _ = xgcd(self.base, list(a.c), list(self.modulus))
        # g is a nonzero constant since the modulus is irreducible
        return self.from_base_poly([x / g[0] for x in s])

    def to_vector(self, x):
        x = self.coerce(x)
        out = []
        for a in x.c:
            out.extend(self.base.to_vector(a))
        return out

    def from_vector(self, v):
        k = self.base.degree
        return AlgElt(self, [self.base.from_vector(v[i * k:(i + 1) * k]) for i in range(self.d)])

    def random_element(self, rng):
        return AlgElt(self, [self.base.random_element(rng) for _ in range(self.d)])

    def format(self, x):
        return _poly_str(list(self.coerce(x).c), self.name, self.base)

    def describe(self):
        return f"{self.base!r}[{self.name}]/({_poly_str(list(self.modulus), self.name, self.base)})"

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.base == self.base
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash((self.base, self.modulus))

    def __repr__(self):
        return self.describe()


QQ = RationalField()


def prime_field(p):
    return QQ if p == 0 else PrimeField(p)


def common_field(a, b):
    """The larger of two fields when one lies in the other's tower."""
    if a == b:
        return a
    if a in b.tower():
        return b
    if b in a.tower():
        return a
    raise ValueError(f"no common field for {a!r} and {b!r}")


def field_of(x, default=QQ):
    if isinstance(x, AlgElt):
        return x.field
    if isinstance(x, FpElt):
        return PrimeField(x.p)
    return default


class Subfield:
    """The subfield of ``ambient`` generated by ``generators`` over the prime field.

    Membership is decided by linear algebra over the prime field on absolute
    coordinates.
    """

    def __init__(self, ambient, generators=()):
        self.ambient = ambient
        self.generators = tuple(ambient.coerce(g) for g in generators)
        basis = [ambient.one()]
        vecs = [ambient.to_vector(ambient.one())]
        frontier = list(basis)
        while frontier:
            new = []
            for b in frontier:
                for g in self.generators:
                    x = b * g
                    if not self._in_span(vecs, ambient.to_vector(x)):
                        vecs.append(ambient.to_vector(x))
                        basis.append(x)
                        new.append(x)
            frontier = new
        self.basis = basis
        self._vecs = vecs

    @property
    def degree(self):
        return len(self.basis)

    def _scalar_ops(self):
        if self.ambient.char == 0:
            return lambda v: Fraction(v), lambda a, b: a / b
        p = self.ambient.char
        return lambda v: int(v) % p, lambda a, b: a * pow(b, -1, p) % p

    def _in_span(self, vecs, target):
        conv, div = self._scalar_ops()
        p = self.ambient.char
        rows = [[conv(x) for x in v] for v in vecs]
        t = [conv(x) for x in target]
        # eliminate target against an echelon form of rows
        echelon = []
        for r in rows:
            r = list(r)
            for piv, er in echelon:
                if r[piv]:
                    f = div(r[piv], er[piv])
                    r = [(a - f * b) % p if p else a - f * b for a, b in zip(r, er)]
            piv = next((i for i, a in enumerate(r) if a), None)
            if piv is not None:
                echelon.append((piv, r))
        for piv, er in echelon:
            if t[piv]:
                f = div(t[piv], er[piv])
                t = [(a - f * b) % p if p else a - f * b for a, b in zip(t, er)]
        return not any(t)

    def __contains__(self, x):
        try:
            v = self.ambient.to_vector(x)
        except (TypeError, ValueError):
            return False
        return self._in_span(self._vecs, v)

    def __repr__(self):
        gens = ", ".join(repr(g) for g in self.generators)
        return f"Subfield({gens} in {self.ambient!r})"
