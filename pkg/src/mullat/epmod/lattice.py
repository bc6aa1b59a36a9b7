"""Finitely generated E_p-submodules of Q^k in canonical form.

An E_p-module ``E_p·S`` (``S`` a finite set of vectors) is stored as the
integer lattice ``E_p·S ∩ Z^k``.  For ``p = 0`` that is just the Z-span; for
``p > 0`` it is the span saturated at ``p`` (nothing outside it has a
``p``-power multiple inside it).  That representative is unique, so equality
of modules is equality of Hermite normal forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .._arith import lcm_all, smallest_prime_factor, strip_prime
from ..errors import (
    CharacteristicMismatch,
    DependentInput,
    DimensionMismatch,
    NotAMember,
    NotASubmodule,
    NotPure,
    QuotientTorsion,
    ZeroInput,
)
from .normal_forms import (
    hnf,
    identity,
    integer_left_kernel,
    matmul,
    nullspace_mod_p,
    saturation,
    snf,
    solve_hnf,
    transpose,
    unimodular_inverse,
)
from .scalars import EpScalar, ExponentVector, as_char


@dataclass(frozen=True)
class EpLattice:
    """Canonical lattice: HNF rows of the p-saturated integer representative.

    Build instances with :func:`canonical_lattice`; the constructor trusts its
    arguments.
    """

    p: int
    ambient: int
    rows: tuple

    @property
    def rank(self):
        return len(self.rows)

    def basis(self):
        return [ExponentVector(row, self.p) for row in self.rows]

    def __contains__(self, v):
        return member(v, self) is not None

    def to_json(self):
        return {"p": self.p, "ambient": self.ambient, "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data):
        return canonical_lattice(int(data["p"]), int(data["ambient"]), data["rows"])

    @classmethod
    def full(cls, p, ambient):
        return cls(as_char(p), ambient, tuple(map(tuple, identity(ambient))))

    @classmethod
    def zero(cls, p, ambient):
        return cls(as_char(p), ambient, ())

    def __repr__(self):
        return f"EpLattice(p={self.p}, ambient={self.ambient}, rows={[list(r) for r in self.rows]})"


def _integer_rows(p, ambient, generators):
    out = []
    for g in generators:
        v = ExponentVector.of(g, p) if not isinstance(g, ExponentVector) else g
        if v.p != p:
            raise CharacteristicMismatch(f"generator over E_{v.p}, lattice over E_{p}")
        if v.dim != ambient:
            raise DimensionMismatch(f"generator of length {v.dim} in ambient dimension {ambient}")
        out.append(list(v.scaled_integers()[1]))
    return out


def _saturate_at(p, rows):
    """Smallest lattice containing ``rows`` that is saturated at the prime ``p``."""
    while rows:
        kernel = nullspace_mod_p(transpose(rows), p)
        if not kernel:
            return rows
        extra = []
        for c in kernel:
            combo = [sum(ci * r[j] for ci, r in zip(c, rows)) for j in range(len(rows[0]))]
            extra.append([x // p for x in combo])
        rows = hnf(rows + extra)
    return rows


def _from_integer_rows(p, ambient, rows):
    rows = hnf([list(r) for r in rows], ambient) if rows else []
    if p and rows:
        rows = _saturate_at(p, rows)
    return EpLattice(p, ambient, tuple(tuple(r) for r in rows))


def canonical_lattice(p, ambient: int, generators: Sequence = ()) -> EpLattice:
    """Canonical form of the E_p-span of ``generators`` inside Q^ambient."""
    p = as_char(p)
    return _from_integer_rows(p, ambient, _integer_rows(p, ambient, generators))


def span(p, ambient, generators):
    return canonical_lattice(p, ambient, generators)


def _check_compatible(*lattices):
    first = lattices[0]
    for other in lattices[1:]:
        if other.p != first.p:
            raise CharacteristicMismatch("lattices over different E_p")
        if other.ambient != first.ambient:
            raise DimensionMismatch("lattices in different ambient dimensions")


def member(v, lattice: EpLattice):
    """E_p-coefficients of ``v`` against the canonical basis, or ``None``.

    Raises :class:`DimensionMismatch` when the lengths disagree.
    """
    v = ExponentVector.of(v, lattice.p)
    if v.dim != lattice.ambient:
        raise DimensionMismatch(f"vector of length {v.dim} vs ambient {lattice.ambient}")
    k, ints = v.scaled_integers()
    if not lattice.rows:
        return () if not any(ints) else None
    coeffs = solve_hnf(lattice.rows, ints)
    if coeffs is None:
        return None
    scale = lattice.p ** k if lattice.p else 1
    return tuple(EpScalar.of(Fraction(c, scale), lattice.p) for c in coeffs)


def require_member(v, lattice):
    c = member(v, lattice)
    if c is None:
        raise NotAMember(f"{v} is not in the lattice")
    return c


def rank(lattice: EpLattice) -> int:
    return lattice.rank


def contains_lattice(big: EpLattice, small: EpLattice) -> bool:
    _check_compatible(big, small)
    return all(member(r, big) is not None for r in small.rows)


def lattice_sum(a: EpLattice, b: EpLattice) -> EpLattice:
    _check_compatible(a, b)
    return _from_integer_rows(a.p, a.ambient, list(a.rows) + list(b.rows))


def intersect(a: EpLattice, b: EpLattice) -> EpLattice:
    """Members common to both lattices."""
    _check_compatible(a, b)
    if not a.rows or not b.rows:
        return EpLattice.zero(a.p, a.ambient)
    stacked = [list(r) for r in a.rows] + [list(r) for r in b.rows]
    kernel = integer_left_kernel(stacked)
    ra = len(a.rows)
    gens = [
        [sum(k[i] * a.rows[i][j] for i in range(ra)) for j in range(a.ambient)]
        for k in kernel
    ]
    return _from_integer_rows(a.p, a.ambient, gens)


def rational_closure(a: EpLattice) -> EpLattice:
    """``Q·a ∩ Z^k`` (already saturated at every prime)."""
    return EpLattice(a.p, a.ambient, tuple(map(tuple, saturation([list(r) for r in a.rows], a.ambient))))


def pure_hull(a: EpLattice, m: EpLattice) -> EpLattice:
    """``{x in m : n·x in a for some nonzero n in E_p}``, i.e. ``Q·a ∩ m``."""
    _check_compatible(a, m)
    if not contains_lattice(m, a):
        raise NotASubmodule("pure_hull needs a ⊆ m")
    if not a.rows:
        return a
    return intersect(rational_closure(a), m)


def is_pure(a: EpLattice, m: EpLattice) -> bool:
    return pure_hull(a, m) == a


def coordinates(sub: EpLattice, basis_of: EpLattice):
    """Rows of ``sub`` written in the canonical basis of ``basis_of`` (E_p entries)."""
    return [require_member(r, basis_of) for r in sub.rows]


def _integral_matrix(rows_of_scalars, p):
    """Scale an E_p matrix by a power of p (a unit) to make it integral."""
    k = max((c.p_pow for row in rows_of_scalars for c in row), default=0)
    scale = p ** k if p else 1
    return [[int(c.as_fraction() * scale) for c in row] for row in rows_of_scalars]


def invariant_factors(rows_of_scalars, p) -> tuple:
    """SNF invariants of an E_p matrix with the p-parts removed (p > 0)."""
    mat = _integral_matrix(rows_of_scalars, p)
    if not mat:
        return ()
    inv = snf(mat).invariants
    return tuple(strip_prime(d, p) for d in inv)


@dataclass(frozen=True)
class SaturationIndex:
    index: int
    invariant_factors: tuple

    @property
    def exponent(self):
        """Smallest m with m·pure_hull ⊆ A."""
        return lcm_all(self.invariant_factors)


def saturation_index(a: EpLattice, m: EpLattice) -> SaturationIndex:
    """Invariant factors of ``a`` inside ``pure_hull(a, m)``.

    For ``p > 0`` the p-parts are stripped, since p is a unit of E_p.
    """
    hull = pure_hull(a, m)
    factors = invariant_factors(coordinates(a, hull), a.p)
    index = 1
    for d in factors:
        index *= d
    return SaturationIndex(index, factors)


@dataclass(frozen=True)
class SimplicityResult:
    simple: bool
    prime: int | None = None
    root: ExponentVector | None = None

    def __bool__(self):
        return self.simple


def is_simple(a, m: EpLattice) -> SimplicityResult:
    """Whether ``a`` spans a pure submodule of ``m``.

    When it does not, the result carries a prime ``l != p`` and ``root`` in
    ``m`` with ``l * root == a``.
    """
    a = ExponentVector.of(a, m.p)
    if a.dim != m.ambient:
        raise DimensionMismatch("vector and lattice dimensions differ")
    if a.is_zero():
        raise ZeroInput("the zero vector is never simple")
    require_member(a, m)
    line = canonical_lattice(m.p, m.ambient, [a])
    hull = pure_hull(line, m)
    (c,) = require_member(a, hull)
    k = abs(strip_prime(c.num, m.p))
    if k == 1:
        return SimplicityResult(True)
    ell = smallest_prime_factor(k)
    root = a.scale(Fraction(1, ell))
    return SimplicityResult(False, ell, root)


def free_basis_extension(a: EpLattice, lifts, m: EpLattice):
    """Basis of ``span(a ∪ lifts)`` made of the basis of ``a`` plus ``lifts``.

    Valid exactly when the lifts' classes form a basis of a torsion-free
    quotient ``span(a ∪ lifts) / a``; otherwise raises.
    """
    lifts = [ExponentVector.of(v, a.p) for v in lifts]
    _check_compatible(a, m)
    if not contains_lattice(m, a):
        raise NotASubmodule("a must lie in m")
    for v in lifts:
        require_member(v, m)
    total = canonical_lattice(a.p, a.ambient, a.basis() + lifts)
    if not is_pure(a, total):
        raise QuotientTorsion("quotient has torsion: a is not pure in span(a ∪ lifts)")
    if total.rank != a.rank + len(lifts):
        raise DependentInput("lift classes are dependent modulo a")
    rows = a.basis() + lifts
    # the union spans total and has the right size, so it is a basis
    assert canonical_lattice(a.p, a.ambient, rows) == total
    return rows


@dataclass(frozen=True)
class QuotfreeResult:
    basis: tuple  # representatives in M of a basis of the hull modulo B
    hull: EpLattice  # pure_hull(span(c) + B, M)
    hypothesis_holds: bool


def _complement_basis(sub: EpLattice, sup: EpLattice):
    """Vectors extending a basis of pure ``sub`` to a basis of ``sup``."""
    coords = _integral_matrix(coordinates(sub, sup), sub.p) if sub.rows else []
    r = sup.rank
    if not coords:
        return [list(row) for row in sup.rows]
    res = snf(coords, r)
    if any(d != 1 for d in res.invariants) or len(res.invariants) != len(coords):
        raise NotPure("sub is not pure in sup")
    v_inv = unimodular_inverse([list(row) for row in res.V])
    comp = v_inv[len(coords):]
    comp = hnf(comp, r) if comp else []
    return matmul(comp, [list(row) for row in sup.rows])


def _reduce_mod(vec, lat: EpLattice):
    """Deterministic representative of ``vec`` modulo the HNF rows of ``lat``."""
    vec = list(vec)
    for row in lat.rows:
        pc = next(j for j, x in enumerate(row) if x)
        q = vec[pc] // row[pc]
        if q:
            vec = [x - q * y for x, y in zip(vec, row)]
    return vec


def quotfree_basis(m: EpLattice, b: EpLattice, a: EpLattice, c) -> QuotfreeResult:
    """Basis of the pure hull of ``span(c mod B)`` in ``M/B``.

    ``hypothesis_holds`` reports whether ``pure_hull(c+B, M)`` is contained in
    ``pure_hull(c+A, M) + B``: every divisibility of ``c`` modulo ``B`` is
    already explained modulo the finitely generated ``A``.
    """
    _check_compatible(m, b, a)
    c = [ExponentVector.of(v, m.p) for v in c]
    if not contains_lattice(m, b):
        raise NotASubmodule("B must lie in M")
    if not is_pure(b, m):
        raise NotPure("B is not pure in M")
    if not contains_lattice(b, a):
        raise NotASubmodule("A must lie in B")
    for v in c:
        require_member(v, m)
    cb = canonical_lattice(m.p, m.ambient, b.basis() + c)
    if cb.rank != b.rank + len(c):
        raise DependentInput("c is not independent over B")
    hull = pure_hull(cb, m)
    reps = [_reduce_mod(v, b) for v in _complement_basis(b, hull)]
    ca = canonical_lattice(m.p, m.ambient, a.basis() + c)
    explained = lattice_sum(pure_hull(ca, m), b)
    holds = contains_lattice(explained, hull)
    return QuotfreeResult(
        basis=tuple(ExponentVector(v, m.p) for v in reps),
        hull=hull,
        hypothesis_holds=holds,
    )
