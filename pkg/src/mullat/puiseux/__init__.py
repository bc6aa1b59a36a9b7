"""Truncated Puiseux series, the residue place, Newton-Puiseux roots and root descent."""

from .fields import QQ, ExtensionField, PrimeField, RationalField, Subfield, prime_field
from .newton import PuiseuxRoot, evaluate_poly, newton_puiseux
from .places import DescentReport, choose_point, descend_root
from .series import DEFAULT_RELATIVE_PRECISION, PuiseuxSeries, format_series
from .text import parse_series, parse_ypoly

__all__ = [
    "DEFAULT_RELATIVE_PRECISION",
    "DescentReport",
    "ExtensionField",
    "PrimeField",
    "PuiseuxRoot",
    "PuiseuxSeries",
    "QQ",
    "RationalField",
    "Subfield",
    "choose_point",
    "descend_root",
    "evaluate_poly",
    "format_series",
    "newton_puiseux",
    "parse_series",
    "parse_ypoly",
    "prime_field",
]
