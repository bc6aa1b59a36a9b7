"""Torsion-free E_p-modules realised as lattices in Q^k."""

from .lattice import (
    EpLattice,
    QuotfreeResult,
    SaturationIndex,
    SimplicityResult,
    canonical_lattice,
    contains_lattice,
    coordinates,
    free_basis_extension,
    intersect,
    invariant_factors,
    is_pure,
    is_simple,
    lattice_sum,
    member,
    pure_hull,
    quotfree_basis,
    rank,
    rational_closure,
    saturation_index,
    span,
)
from .normal_forms import SnfResult, hnf, snf
from .scalars import Characteristic, EpScalar, ExponentVector, as_char

__all__ = [
    "Characteristic",
    "EpLattice",
    "EpScalar",
    "ExponentVector",
    "QuotfreeResult",
    "SaturationIndex",
    "SimplicityResult",
    "SnfResult",
    "as_char",
    "canonical_lattice",
    "contains_lattice",
    "coordinates",
    "free_basis_extension",
    "hnf",
    "intersect",
    "invariant_factors",
    "is_pure",
    "is_simple",
    "lattice_sum",
    "member",
    "pure_hull",
    "quotfree_basis",
    "rank",
    "rational_closure",
    "saturation_index",
    "snf",
    "span",
]
