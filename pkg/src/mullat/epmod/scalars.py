"""Scalars of E_p (Z when p = 0, Z[1/p] when p is prime) and tuples of them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .._arith import is_prime, p_adic_valuation, strip_prime
from ..errors import CharacteristicMismatch, NotInRing


@dataclass(frozen=True)
class Characteristic:
    p: int = 0

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 0:
            raise ValueError(f"characteristic must be a non-negative int, got {self.p!r}")
        if self.p != 0 and not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")

    def __int__(self):
        return self.p


def as_char(p) -> int:
    """Accept a :class:`Characteristic` or an int and return the validated int."""
    if isinstance(p, Characteristic):
        return p.p
    return Characteristic(int(p)).p


def _split_fraction(q: Fraction, p: int):
    """Write ``q = num / p**k`` or raise :class:`NotInRing`."""
    den = q.denominator
    if den == 1:
        return q.numerator, 0
    if p == 0:
        raise NotInRing(f"{q} is not an integer (E_0 = Z)")
    k = p_adic_valuation(den, p)
    if den != p ** k:
        raise NotInRing(f"{q} is not in Z[1/{p}]")
    return q.numerator, k


@dataclass(frozen=True, eq=False)
class EpScalar:
    """An element ``num / p**p_pow`` of E_p, kept normalised.

    Normalisation means ``p_pow == 0`` or ``p`` does not divide ``num``.
    """

    num: int
    p_pow: int = 0
    p: int = 0

    def __post_init__(self):
        if self.p_pow < 0:
            raise ValueError("p_pow must be non-negative")
        if self.p == 0 and self.p_pow:
            raise NotInRing("p_pow must be 0 in characteristic 0")
        num, k = self.num, self.p_pow
        if self.p and num == 0:
            k = 0
        while k and num % self.p == 0:
            num //= self.p
            k -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "p_pow", k)

    @classmethod
    def of(cls, value, p: int = 0) -> "EpScalar":
        if isinstance(value, EpScalar):
            if value.p != p:
                raise CharacteristicMismatch(f"scalar over E_{value.p} used where E_{p} expected")
            return value
        if isinstance(value, str):
            value = Fraction(value)
        if not isinstance(value, Rational):
            raise TypeError(f"cannot make an E_p scalar from {value!r}")
        num, k = _split_fraction(Fraction(value), p)
        return cls(num, k, p)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.p ** self.p_pow if self.p else 1)

    def is_zero(self):
        return self.num == 0

    def is_unit(self):
        """Units of Z are +-1; units of Z[1/p] are +-p**k."""
        return abs(strip_prime(self.num, self.p)) == 1

    def _coerce(self, other):
        if isinstance(other, EpScalar):
            if other.p != self.p:
                raise CharacteristicMismatch("scalars over different E_p")
            return other
        return EpScalar.of(other, self.p)

    def __add__(self, other):
        return EpScalar.of(self.as_fraction() + self._coerce(other).as_fraction(), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return EpScalar.of(self.as_fraction() - self._coerce(other).as_fraction(), self.p)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        return EpScalar.of(self.as_fraction() * self._coerce(other).as_fraction(), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return EpScalar(-self.num, self.p_pow, self.p)

    def __eq__(self, other):
        if isinstance(other, EpScalar):
            return (self.num, self.p_pow, self.p) == (other.num, other.p_pow, other.p)
        if isinstance(other, Rational):
            return self.as_fraction() == other
        return NotImplemented

    def __hash__(self):
        return hash(self.as_fraction())

    def __repr__(self):
        return f"EpScalar({self.as_fraction()}, p={self.p})"

    def __str__(self):
        return str(self.as_fraction())

    def to_json(self):
        return {"num": str(self.num), "p_pow": self.p_pow}

    @classmethod
    def from_json(cls, data, p: int = 0):
        return cls(int(data["num"]), int(data["p_pow"]), p)


@dataclass(frozen=True)
class ExponentVector:
    """A tuple of E_p scalars of fixed length."""

    entries: tuple
    p: int = 0

    def __post_init__(self):
        object.__setattr__(
            self, "entries", tuple(EpScalar.of(e, self.p) for e in self.entries)
        )

    @classmethod
    def of(cls, values, p: int = 0) -> "ExponentVector":
        if isinstance(values, ExponentVector):
            if values.p != p:
                raise CharacteristicMismatch("vector over a different E_p")
            return values
        return cls(tuple(values), p)

    @property
    def dim(self):
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def fractions(self):
        return tuple(e.as_fraction() for e in self.entries)

    def is_zero(self):
        return all(e.is_zero() for e in self.entries)

    def scaled_integers(self):
        """Return ``(k, ints)`` with ``ints = p**k * self`` integral and ``k`` minimal."""
        k = max((e.p_pow for e in self.entries), default=0)
        scale = self.p ** k if self.p else 1
        return k, tuple(int(e.as_fraction() * scale) for e in self.entries)

    def __add__(self, other):
        other = ExponentVector.of(other, self.p)
        return ExponentVector(tuple(a + b for a, b in zip(self.entries, other.entries, strict=True)), self.p)

    def __sub__(self, other):
        other = ExponentVector.of(other, self.p)
        return ExponentVector(tuple(a - b for a, b in zip(self.entries, other.entries, strict=True)), self.p)

    def __neg__(self):
        return ExponentVector(tuple(-a for a in self.entries), self.p)

    def scale(self, c) -> "ExponentVector":
        """Multiply by a rational; raises :class:`NotInRing` if the result leaves E_p."""
        c = c.as_fraction() if isinstance(c, EpScalar) else Fraction(c)
        return ExponentVector(tuple(a.as_fraction() * c for a in self.entries), self.p)

    def __repr__(self):
        return f"ExponentVector({[str(e) for e in self.entries]}, p={self.p})"

    def to_json(self):
        return [e.to_json() for e in self.entries]
