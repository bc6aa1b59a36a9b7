"""Evaluation places on rational functions and the root-descent identity.

A place here sends some variables to constants and leaves the rest alone.
It is defined on an element when no irreducible factor vanishes (numerator)
or blows up (denominator) under the substitution.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import IdentityFailure, PlaceUndefined, ZeroInput
from ..multfield import MultElement, factor

SEARCH_LIMIT = 1000


def _irreducible_polys(elems):
    for e in elems:
        for irr, _ in e.factors:
            if not irr.is_prime:
                yield irr.poly


def vanishes(elems, assignment):
    """First irreducible factor that becomes zero under ``assignment`` (or None)."""
    for poly in _irreducible_polys(elems):
        if poly.substitute(assignment).is_zero():
            return poly
    return None


def choose_point(elems, kill):
    """Smallest non-negative values for ``kill`` (searched one variable at a time, in order)
    keeping every factor of every element nonzero."""
    elems = list(elems)
    field = elems[0].field if elems else None
    limit = field.p if field is not None and field.p else SEARCH_LIMIT
    assignment = {}
    for var in kill:
        for value in range(limit):
            trial = dict(assignment)
            trial[var] = value
            if vanishes(elems, trial) is None:
                assignment = trial
                break
        else:
            raise PlaceUndefined(f"no value below {limit} for {var} keeps every factor nonzero")
    return assignment


def apply_place(elem: MultElement, assignment):
    try:
        return elem.substitute(assignment)
    except ZeroInput as exc:
        raise PlaceUndefined(f"place {assignment} is undefined on {elem}: {exc}") from None


@dataclass(frozen=True)
class DescentReport:
    point: dict
    base: MultElement  # pi(b)
    image: MultElement  # pi(alpha)
    witness: MultElement  # alpha / pi(alpha)
    m: int
    verified: bool

    def to_json(self):
        return {
            "point": dict(self.point),
            "pi_b": str(self.base),
            "pi_alpha": str(self.image),
            "witness": str(self.witness),
            "m": self.m,
            "verified": self.verified,
        }


def descend_root(b, alpha, m, multiplier=1, kill=(), point=None) -> DescentReport:
    """Push ``multiplier * alpha^m = b`` through the place ``kill -> point``.

    The place must fix ``multiplier`` (it may not involve killed variables).
    Then ``pi(b) * (alpha / pi(alpha))^m = b``, which is checked exactly.
    Without ``point`` the smallest admissible one is chosen.
    """
    field = b.field if isinstance(b, MultElement) else alpha.field
    b, alpha, multiplier = (x if isinstance(x, MultElement) else factor(x, field) for x in (b, alpha, multiplier))
    if m < 1:
        raise ValueError("m must be a positive integer")
    if multiplier * alpha ** m != b:
        raise IdentityFailure(f"({multiplier})*({alpha})^{m} != {b}")
    kill = tuple(kill)
    moved = set(multiplier.support()) & set(kill)
    if moved:
        raise IdentityFailure(f"the place must fix the multiplier, which involves {sorted(moved)}")
    if point is None:
        point = choose_point([b, alpha], kill)
    else:
        point = dict(point)
        bad = vanishes([b, alpha], point)
        if bad is not None:
            raise PlaceUndefined(f"{bad} vanishes at {point}")
    pi_b = apply_place(b, point)
    pi_alpha = apply_place(alpha, point)
    witness = alpha / pi_alpha
    if pi_b * witness ** m != b:
        raise IdentityFailure("descended identity failed")
    return DescentReport(point, pi_b, pi_alpha, witness, m, True)
