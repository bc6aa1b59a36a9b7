"""Exact lattices over E_p, multiplicative groups of function fields, Kummer degrees, Puiseux series."""

__version__ = "0.1.0"
