from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mullat.epmod import (
    EpLattice,
    EpScalar,
    ExponentVector,
    canonical_lattice,
    contains_lattice,
    free_basis_extension,
    intersect,
    is_pure,
    is_simple,
    member,
    pure_hull,
    quotfree_basis,
    rank,
    saturation_index,
    snf,
)
from mullat.epmod.normal_forms import determinant, matmul
from mullat.errors import DependentInput, DimensionMismatch, NotASubmodule, NotInRing, QuotientTorsion, ZeroInput


def lat(p, rows, ambient=None):
    return canonical_lattice(p, ambient or len(rows[0]), rows)


def Z(k, p=0):
    return EpLattice.full(p, k)


# --- scalars -----------------------------------------------------------------


def test_scalar_normalisation_and_ring_check():
    assert EpScalar.of(Fraction(3, 4), 2) == EpScalar(3, 2, 2)
    assert EpScalar.of(Fraction(4, 2), 2) == EpScalar.of(2, 2)
    with pytest.raises(NotInRing):
        EpScalar.of(Fraction(1, 2), 0)
    with pytest.raises(NotInRing):
        EpScalar.of(Fraction(1, 6), 2)


def test_scalar_json_round_trip():
    x = EpScalar.of(Fraction(-5, 8), 2)
    assert EpScalar.from_json(x.to_json(), 2) == x


# --- canonical form ----------------------------------------------------------


def test_canonical_lattice_examples():
    assert lat(0, [[2, 4], [1, 2]]).rows == ((1, 2),)
    empty = canonical_lattice(0, 2, [])
    assert empty.rank == 0
    assert lat(2, [[2, 0], [0, 1]]).rows == ((1, 0), (0, 1))


def test_canonical_lattice_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        canonical_lattice(0, 2, [[1, 2, 3]])


def test_lattice_json_round_trip():
    L = lat(3, [[3, 6, 1], [0, 9, 2]])
    assert EpLattice.from_json(L.to_json()) == L


# --- snf ---------------------------------------------------------------------


def test_snf_examples():
    assert snf([[2, 4], [6, 8]]).invariants == (2, 4)
    assert snf([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).invariants == (1, 1, 1)
    assert snf([[0, 0], [0, 0]]).invariants == ()


def test_snf_transform_is_exact():
    A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    res = snf(A)
    assert matmul(matmul([list(r) for r in res.U], A), [list(r) for r in res.V]) == res.diagonal_matrix()
    assert abs(determinant([list(r) for r in res.U])) == 1
    assert abs(determinant([list(r) for r in res.V])) == 1
    assert res.invariants == (2, 6, 12)


# --- membership, rank, intersection -------------------------------------------


def test_member_examples():
    assert list(member([2, 4], lat(0, [[1, 2]]))) == [EpScalar.of(2)]
    assert member([1, 1], lat(0, [[1, 2]])) is None
    assert list(member([1, 2], lat(2, [[2, 4]]))) == [EpScalar.of(1, 2)]


def test_rank_examples():
    assert rank(lat(0, [[1, 2]])) == 1
    assert rank(lat(0, [[1, 0], [0, 1]])) == 2
    assert rank(lat(0, [[2, 4], [3, 6]])) == 1


def test_intersect_examples():
    two = lat(0, [[2, 0], [0, 2]])
    three = lat(0, [[3, 0], [0, 3]])
    assert intersect(two, three) == lat(0, [[6, 0], [0, 6]])
    assert intersect(two, two) == two
    assert intersect(lat(0, [[1, 0]]), lat(0, [[0, 1]])).rank == 0


def test_intersect_by_membership_oracle():
    a, b = lat(0, [[2, 0], [0, 2]]), lat(0, [[3, 0], [0, 3]])
    both = intersect(a, b)
    for x in range(-12, 13):
        for y in range(-12, 13):
            assert ((x, y) in both) == ((x, y) in a and (x, y) in b)


# --- pure hulls and simplicity ------------------------------------------------


def test_pure_hull_examples():
    assert pure_hull(lat(0, [[2, 4]]), Z(2)) == lat(0, [[1, 2]])
    assert pure_hull(lat(0, [[2, 0], [0, 3]]), Z(2)) == Z(2)


def test_pure_hull_requires_submodule():
    with pytest.raises(NotASubmodule):
        pure_hull(lat(0, [[1, 0]]), lat(0, [[2, 0]]))


def test_is_simple_examples():
    assert is_simple([1, 1], Z(2))
    res = is_simple([2, 2], Z(2))
    assert not res and res.prime == 2 and list(res.root) == [EpScalar.of(1), EpScalar.of(1)]
    assert is_simple([2, 2], Z(2, p=2))


def test_is_simple_errors():
    with pytest.raises(ZeroInput):
        is_simple([0, 0], Z(2))
    with pytest.raises(Exception):
        is_simple([1, 0], lat(0, [[2, 0], [0, 1]]))


def test_saturation_index_examples():
    si = saturation_index(lat(0, [[2, 4]]), Z(2))
    assert si.invariant_factors == (2,) and si.index == 2
    si = saturation_index(lat(0, [[1, 2]]), Z(2))
    assert si.index == 1
    si = saturation_index(lat(3, [[2, 0], [0, 3]]), Z(2, p=3))
    # sorted ascending; the 3 is a unit in Z[1/3]
    assert sorted(si.invariant_factors) == [1, 2] and si.index == 2


def test_free_basis_extension_examples():
    assert free_basis_extension(lat(0, [[1, 0]]), [[0, 1]], Z(2)) == [ExponentVector.of([1, 0]), ExponentVector.of([0, 1])]
    basis = free_basis_extension(lat(0, [[1, 2]]), [[0, 1]], Z(2))
    assert abs(determinant([[int(x.as_fraction()) for x in v] for v in basis])) == 1
    with pytest.raises(QuotientTorsion):
        free_basis_extension(lat(0, [[2, 0]]), [[1, 0]], Z(2))


def test_quotfree_basis_examples():
    M = Z(3)
    B = lat(0, [[1, 0, 0]], 3)
    res = quotfree_basis(M, B, B, [[0, 1, 0]])
    assert [list(v) for v in res.basis] == [[EpScalar.of(0), EpScalar.of(1), EpScalar.of(0)]]
    assert res.hypothesis_holds
    B = lat(0, [[2, 1, 0]], 3)
    res = quotfree_basis(M, B, B, [[0, 0, 2]])
    assert [[int(x.as_fraction()) for x in v] for v in res.basis] == [[0, 0, 1]]
    with pytest.raises(DependentInput):
        quotfree_basis(M, B, B, [[2, 1, 0]])


# --- properties ------------------------------------------------------------------

small = st.integers(-6, 6)


def rows_strategy(k):
    return st.lists(st.lists(small, min_size=k, max_size=k), min_size=1, max_size=3)


@settings(max_examples=60, deadline=None)
@given(rows_strategy(3), st.sampled_from([0, 2, 3]))
def test_pure_hull_is_pure_and_contains(rows, p):
    A = canonical_lattice(p, 3, rows)
    H = pure_hull(A, Z(3, p))
    assert contains_lattice(H, A)
    assert is_pure(H, Z(3, p))
    assert H.rank == A.rank


@settings(max_examples=60, deadline=None)
@given(rows_strategy(3), rows_strategy(3))
def test_intersection_is_contained_in_both(r1, r2):
    a, b = canonical_lattice(0, 3, r1), canonical_lattice(0, 3, r2)
    c = intersect(a, b)
    assert contains_lattice(a, c) and contains_lattice(b, c)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4))
def test_snf_divisibility_chain(mat):
    inv = snf(mat).invariants
    assert all(d > 0 for d in inv)
    assert all(inv[i + 1] % inv[i] == 0 for i in range(len(inv) - 1))


@settings(max_examples=60, deadline=None)
@given(st.lists(small, min_size=2, max_size=3).filter(any), st.sampled_from([0, 2, 5]))
def test_simple_witness_multiplies_back(v, p):
    res = is_simple(v, Z(len(v), p))
    if not res:
        assert res.prime != p
        assert [x * res.prime for x in res.root.fractions()] == [Fraction(x) for x in v]
