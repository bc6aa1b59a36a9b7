"""Multiplicative groups of rational function fields over Q or F_p, in factored form."""

from .elements import (
    ExponentMatrixContext,
    HullBasis,
    Irreducible,
    MultElement,
    combine,
    exponent_matrix,
    factor,
    independent_mod_constants,
    parse_element,
    pow_scalar,
    pure_hull_basis_mod_constants,
    rationals_mod_torsion,
)
from .poly import BaseField, Poly, parse_poly

__all__ = [
    "BaseField",
    "ExponentMatrixContext",
    "HullBasis",
    "Irreducible",
    "MultElement",
    "Poly",
    "combine",
    "exponent_matrix",
    "factor",
    "independent_mod_constants",
    "parse_element",
    "parse_poly",
    "pow_scalar",
    "pure_hull_basis_mod_constants",
    "rationals_mod_torsion",
]
