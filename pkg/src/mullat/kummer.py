"""Division systems, Kummer groups and finite-determination constants.

Roots of unity are never built as field elements.  A compatible system of
roots ``c^(1/n)`` differs from a fixed reference system by a twist
``tau(n)`` in ``(Z/n)^k`` (``c_j^(1/n)`` is the reference root times
``zeta_n^tau_j(n)``), so everything below is linear algebra over ``Z/n``.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from ._arith import divisors, factorint, lcm_all, strip_prime
from .epmod import EpLattice, EpScalar, canonical_lattice, contains_lattice, invariant_factors, pure_hull, snf
from .epmod.lattice import require_member
from .epmod.normal_forms import hnf, identity, solve_hnf
from .errors import DependentInput, DimensionMismatch
from .multfield import MultElement, combine, exponent_matrix, pow_scalar


# ---------------------------------------------------------------------------
# twists


class TwistMap:
    """A compatible family ``n -> tau(n) in (Z/n)^k`` with ``tau(1) = 0``.

    Compatibility (``tau(n) mod d == tau(d)`` for ``d | n``) holds by
    construction: ``from_integers`` reduces a fixed vector in ``Z^k``, and
    ``random`` draws l-adic digits per prime l, lazily and reproducibly from
    the seed, then glues prime-power levels with the CRT.
    """

    def __init__(self, k: int, kind: str = "zero", integers=None, seed: int = 0):
        if kind not in ("zero", "integers", "random"):
            raise ValueError(f"unknown twist kind {kind!r}")
        self.k = k
        self.kind = kind
        self.integers = tuple(integers) if integers is not None else (0,) * k
        if len(self.integers) != k:
            raise DimensionMismatch("twist vector length differs from the base tuple")
        self.seed = seed
        self._digits = {}
        self._cache = {}
        self._lock = threading.Lock()

    @classmethod
    def zero(cls, k):
        return cls(k)

    @classmethod
    def from_integers(cls, z):
        return cls(len(z), "integers", integers=[int(x) for x in z])

    @classmethod
    def random(cls, k, seed=0):
        return cls(k, "random", seed=seed)

    def _ladic(self, ell, e):
        """Coordinates modulo ``ell**e``; digits are extended on demand."""
        digits = self._digits.get(ell)
        if digits is None:
            digits = self._digits[ell] = [[] for _ in range(self.k)]
        rng_state = f"{self.seed}:{ell}"
        while self.k and len(digits[0]) < e:
            rng = random.Random(f"{rng_state}:{len(digits[0])}")
            for col in digits:
                col.append(rng.randrange(ell))
        return [sum(d * ell ** i for i, d in enumerate(col[:e])) for col in digits]

    def __call__(self, n: int):
        if n < 1:
            raise ValueError("levels are positive integers")
        if self.kind == "zero" or n == 1:
            return (0,) * self.k
        if self.kind == "integers":
            return tuple(z % n for z in self.integers)
        with self._lock:
            if n in self._cache:
                return self._cache[n]
            out = [0] * self.k
            modulus = 1
            for ell, e in factorint(n).items():
                pe = ell ** e
                vals = self._ladic(ell, e)
                # CRT: combine (out mod modulus) with (vals mod pe)
                inv = pow(modulus, -1, pe)
                out = [(o + modulus * ((v - o) * inv % pe)) for o, v in zip(out, vals)]
                modulus *= pe
            res = tuple(x % n for x in out)
            self._cache[n] = res
            return res


@dataclass
class DivisionSystemSpec:
    base: tuple
    twist: TwistMap = None

    def __post_init__(self):
        self.base = tuple(self.base)
        if self.twist is None:
            self.twist = TwistMap.zero(len(self.base))
        if self.twist.k != len(self.base):
            raise DimensionMismatch("twist dimension differs from the base tuple")
        fields = {c.field for c in self.base}
        if len(fields) > 1:
            raise ValueError("base elements over different fields")

    @property
    def field(self):
        return self.base[0].field if self.base else None

    @property
    def p(self):
        return self.field.p if self.base else 0


@dataclass(frozen=True)
class FormalPower:
    """``prod c_j^(q_j)`` computed from the division system's chosen roots.

    ``phase`` is the root of unity separating it from the reference product,
    as ``phase`` in ``Q/Z`` (the element ``zeta^(phase)``, ``zeta = e^(2 pi i)``).
    ``element`` is filled in when every exponent is in E_p.
    """

    exponents: tuple  # Fractions, one per base element
    level: int
    phase: Fraction
    element: MultElement | None

    def __str__(self):
        if self.element is not None:
            return str(self.element)
        pieces = []
        for j, q in enumerate(self.exponents):
            if q:
                pieces.append(f"c{j + 1}^({q})")
        body = "*".join(pieces) or "1"
        return body if self.phase == 0 else f"zeta^({self.phase})*{body}"


def _level_of(q: Fraction, p: int):
    return strip_prime(q.denominator, p) if p else q.denominator


def power_by_matrix(ds: DivisionSystemSpec, matrix):
    """``c^M``: one :class:`FormalPower` per row of the rational matrix ``M``."""
    k = len(ds.base)
    p = ds.p
    out = []
    for row in matrix:
        row = [Fraction(x) for x in row]
        if len(row) != k:
            raise DimensionMismatch(f"row of length {len(row)} for a base of size {k}")
        n = lcm_all(_level_of(q, p) for q in row)
        tau = ds.twist(n)
        phase = Fraction(0)
        for q, t in zip(row, tau):
            # c^(q) = (c^(1/(n p^j)))^(q n p^j); the p-part of the root is unique
            a = q * n
            if p:
                a = Fraction(a.numerator * pow(a.denominator, -1, n) if n > 1 else 0, 1)
            phase += Fraction(int(a) * t, n)
        phase -= phase.numerator // phase.denominator
        element = None
        if all(_level_of(q, p) == 1 for q in row) and ds.base:
            element = MultElement(ds.field)
            for c, q in zip(ds.base, row):
                element = combine(element, pow_scalar(c, EpScalar.of(q, p)), "multiply")
        out.append(FormalPower(tuple(row), n, phase, element))
    return tuple(out)


# ---------------------------------------------------------------------------
# lattice data of a tuple


@dataclass(frozen=True)
class KummerGroup:
    invariants: tuple
    n: int

    @property
    def order(self):
        out = 1
        for d in self.invariants:
            out *= d
        return out


def _reduce_mod(x: EpScalar, n: int, p: int):
    """Image of an E_p scalar in Z/n (n prime to p)."""
    if x.p_pow == 0:
        return x.num % n
    return x.num * pow(p ** x.p_pow, -1, n) % n


def _level(n: int, p: int):
    return strip_prime(n, p) if p else n


def _to_int_matrix(rows, n, p):
    return [[_reduce_mod(EpScalar.of(x, p), n, p) if n > 1 else 0 for x in row] for row in rows]


def kummer_group_of_matrix(inclusion, n: int, p: int = 0) -> KummerGroup:
    """``span(a) / (span(a) ∩ n·Γ)`` where rows of ``inclusion`` give ``a`` in a Γ-basis.

    For p > 0 only the prime-to-p part of ``n`` contributes; p-th roots
    already exist in the perfect closure.
    """
    if n < 1:
        raise ValueError("n must be positive")
    n = _level(n, p)
    rows = [list(r) for r in inclusion]
    if not rows:
        return KummerGroup((), n)
    if n == 1:
        return KummerGroup((), 1)
    ints = _to_int_matrix(rows, n, p)
    res = snf(ints, len(rows[0]))
    # rows of D beyond the rank impose no condition, so they contribute Z/1
    ds = list(res.invariants) + [0] * (len(rows) - len(res.invariants))
    groups = sorted(n // gcd(n, d) for d in ds)
    return KummerGroup(tuple(g for g in groups if g != 1), n)


def kummer_group(a, n: int, context=None) -> KummerGroup:
    """Kummer group of ``K(a^(1/n)) / K`` in the factor-lattice model.

    ``context`` is a :class:`~mullat.multfield.HullBasis` whose hull contains
    the classes of ``a``; by default the pure hull of ``a`` itself.
    """
    from .multfield import pure_hull_basis_mod_constants

    a = list(a)
    if not a:
        return KummerGroup((), n)
    hb = context if context is not None else pure_hull_basis_mod_constants(a)
    ctx = hb.context
    index = list(ctx.index)
    sub = exponent_matrix(a, ctx.field)
    for irr in sub.index:
        if irr not in index:
            raise DimensionMismatch(f"{irr} is outside the context's hull")
    zero = EpScalar(0, 0, ctx.p)
    rows = []
    for e in a:
        fm = e.factor_map()
        rows.append([fm.get(irr, zero) for irr in index])
    if canonical_lattice(ctx.p, len(index), rows).rank != len(a):
        raise DependentInput("a is dependent modulo constants")
    coords = [require_member(r, hb.hull) for r in rows]
    return kummer_group_of_matrix(coords, n, ctx.p)


# ---------------------------------------------------------------------------
# finite determination


@dataclass(frozen=True)
class DeterminationConstant:
    m: int
    invariant_factors: tuple = ()
    p: int = 0

    def __int__(self):
        return self.m


@dataclass(frozen=True)
class SplitInclusion:
    """``a`` and ``b`` written in a basis of the pure hull Γ of ``span(a, b)``."""

    E_a: tuple
    E_b: tuple
    hull: EpLattice
    m: int
    invariant_factors: tuple
    p: int


def split_inclusion(rows, n_a: int, p: int = 0) -> SplitInclusion:
    """Pure hull data for the exponent rows of ``a`` (first ``n_a``) then ``b``."""
    rows = [list(r) for r in rows]
    if not rows:
        empty = EpLattice.zero(p, 0)
        return SplitInclusion((), (), empty, 1, (), p)
    k = len(rows[0])
    span = canonical_lattice(p, k, rows)
    if span.rank != len(rows):
        raise DependentInput("(a, b) is dependent modulo constants")
    hull = pure_hull(span, EpLattice.full(p, k))
    coords = [tuple(require_member(r, hull)) for r in rows]
    inv = invariant_factors(coords, p)
    return SplitInclusion(
        E_a=tuple(coords[:n_a]),
        E_b=tuple(coords[n_a:]),
        hull=hull,
        m=lcm_all(inv),
        invariant_factors=inv,
        p=p,
    )


def _tuple_rows(a, b):
    elems = list(a) + list(b)
    if not elems:
        return [], 0
    ctx = exponent_matrix(elems)
    return [list(r) for r in ctx.matrix], ctx.p


def determination_constant(a, b) -> DeterminationConstant:
    """Smallest ``m`` with ``m·Γ ⊆ span(a, b)`` (p-parts stripped)."""
    rows, p = _tuple_rows(a, b)
    split = split_inclusion(rows, len(list(a)), p)
    return DeterminationConstant(split.m, split.invariant_factors, p)


def is_minimal_multiplier(split: SplitInclusion, m: int) -> bool:
    """True iff ``m·Γ ⊆ span`` and no proper divisor of ``m`` has that property."""

    def works(d):
        span = canonical_lattice(split.p, split.hull.rank, list(split.E_a) + list(split.E_b))
        scaled = canonical_lattice(split.p, split.hull.rank, [[d * int(i == j) for j in range(split.hull.rank)] for i in range(split.hull.rank)])
        return contains_lattice(span, scaled)

    return works(m) and not any(works(d) for d in divisors(m) if d != m)


@dataclass(frozen=True)
class TwistSubgroup:
    """A subgroup of ``(Z/n)^k`` stored as the lattice ``gens + n·Z^k`` in HNF."""

    n: int
    k: int
    rows: tuple

    @property
    def gens(self):
        """Generators reduced into ``[0, n)`` with the ``n·e_i`` rows dropped."""
        out = []
        for r in self.rows:
            red = tuple(x % self.n for x in r)
            if any(red) and red not in out:
                out.append(red)
        return out

    @property
    def order(self):
        det = 1
        for i, r in enumerate(self.rows):
            det *= r[i]
        return self.n ** self.k // det

    def __contains__(self, v):
        if self.k == 0:
            return True
        return solve_hnf(self.rows, [x % self.n for x in v]) is not None

    def contains_multiples(self, m: int) -> bool:
        """Whether ``m·(Z/n)^k`` lies in the subgroup."""
        return all([m * int(i == j) for j in range(self.k)] in self for i in range(self.k))

    def exponent_needed(self) -> int:
        """Least ``e`` with ``e·(Z/n)^k`` inside the subgroup (a divisor of n)."""
        return min(d for d in divisors(self.n) if self.contains_multiples(d))

    def reduce(self, d: int) -> "TwistSubgroup":
        """Image under ``Z/n -> Z/d`` for ``d | n``."""
        if self.n % d:
            raise ValueError(f"{d} does not divide {self.n}")
        return _subgroup(d, self.k, [list(r) for r in self.rows])


def _subgroup(n, k, gens):
    rows = [list(g) for g in gens] + [[n * int(i == j) for j in range(k)] for i in range(k)]
    h = hnf(rows, k) if k else []
    return TwistSubgroup(n, k, tuple(tuple(r) for r in h))


def realizable_twists(E_a, E_b, n: int, p: int = 0) -> TwistSubgroup:
    """``{E_b·chi mod n : chi in (Z/n)^r, E_a·chi ≡ 0 mod n}``.

    Rows of ``E_a`` / ``E_b`` express ``a`` / ``b`` in a saturated basis of
    Γ (``r`` columns); a character ``chi`` on that basis moves the root of a
    basis element by ``zeta_n^chi``, hence the root of row ``v`` by
    ``zeta_n^(v·chi)``.
    """
    E_a = [list(r) for r in E_a]
    E_b = [list(r) for r in E_b]
    widths = {len(r) for r in E_a + E_b}
    if len(widths) > 1:
        raise DimensionMismatch("inclusion matrices have different widths")
    if n < 1:
        raise ValueError("n must be positive")
    r = widths.pop() if widths else 0
    kb = len(E_b)
    if n == 1 or kb == 0:
        return _subgroup(n, kb, [])
    if p and n % p == 0:
        raise ValueError(f"level {n} must be prime to p = {p}")
    A = _to_int_matrix(E_a, n, p)
    B = _to_int_matrix(E_b, n, p)
    if A:
        res = snf(A, r)
        V = [list(row) for row in res.V]
        kernel = []
        for j in range(r):
            col = [V[i][j] for i in range(r)]
            if j < len(res.invariants):
                step = n // gcd(n, res.invariants[j])
                col = [step * x for x in col]
            kernel.append(col)
    else:
        kernel = identity(r)
    images = [[sum(B[i][j] * chi[j] for j in range(r)) % n for i in range(kb)] for chi in kernel]
    return _subgroup(n, kb, images)


@dataclass(frozen=True)
class LevelReport:
    n: int
    ok: bool
    subgroup_gens: tuple
    exponent_needed: int

    def to_json(self):
        return {
            "n": self.n,
            "ok": self.ok,
            "subgroup_gens": [list(g) for g in self.subgroup_gens],
            "exponent_needed": self.exponent_needed,
        }


@dataclass(frozen=True)
class DeterminationReport:
    m: int
    minimal: bool
    levels: tuple
    twist_exponent: int

    @property
    def violations(self):
        return [lv.n for lv in self.levels if not lv.ok]

    @property
    def ok(self):
        return not self.violations

    def to_json(self):
        return {
            "m": self.m,
            "minimal": self.minimal,
            "twist_exponent": self.twist_exponent,
            "ok": self.ok,
            "levels": [lv.to_json() for lv in self.levels],
        }


def check_split(split: SplitInclusion, n_max: int) -> DeterminationReport:
    levels = []
    for n in range(1, n_max + 1):
        if split.p and n % split.p == 0:
            continue
        sub = realizable_twists(split.E_a, split.E_b, n, split.p)
        levels.append(LevelReport(n, sub.contains_multiples(split.m), tuple(sub.gens), sub.exponent_needed()))
    return DeterminationReport(
        m=split.m,
        minimal=is_minimal_multiplier(split, split.m),
        levels=tuple(levels),
        twist_exponent=lcm_all(lv.exponent_needed for lv in levels),
    )


def check_finite_determination(a, b, n_max: int) -> DeterminationReport:
    """Verify ``m·(Z/n)^|b|`` is realizable at every level ``n <= n_max``.

    ``twist_exponent`` is the least common exponent actually needed over the
    levels checked; it always divides ``m``.
    """
    a, b = list(a), list(b)
    rows, p = _tuple_rows(a, b)
    return check_split(split_inclusion(rows, len(a), p), n_max)


def same_type_at(ds1: DivisionSystemSpec, ds2: DivisionSystemSpec, a_count: int, n: int, split: SplitInclusion) -> bool:
    """Whether the two systems' twist difference on ``b`` is realizable at level ``n``.

    The systems must agree on ``a`` (the first ``a_count`` base entries).
    """
    t1, t2 = ds1.twist(n), ds2.twist(n)
    if t1[:a_count] != t2[:a_count]:
        raise ValueError("systems differ on a")
    diff = [(x - y) % n for x, y in zip(t1[a_count:], t2[a_count:])]
    return diff in realizable_twists(split.E_a, split.E_b, n, split.p)


__all__ = [
    "DeterminationConstant",
    "DeterminationReport",
    "DivisionSystemSpec",
    "FormalPower",
    "KummerGroup",
    "LevelReport",
    "SplitInclusion",
    "TwistMap",
    "TwistSubgroup",
    "check_finite_determination",
    "check_split",
    "determination_constant",
    "is_minimal_multiplier",
    "kummer_group",
    "kummer_group_of_matrix",
    "power_by_matrix",
    "realizable_twists",
    "split_inclusion",
]
