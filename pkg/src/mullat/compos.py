"""Composite scenarios: a rational function field in variables covered by blocks.

The subgroup generated by the blocks' own multiplicative groups is modeled
as "constants and every irreducible whose variables lie inside one block".
Classes modulo that subgroup keep only the mixed-support irreducibles, so
every probe below is a statement about this factor-support model.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._arith import lcm_all
from .epmod import EpScalar, canonical_lattice, coordinates, invariant_factors, is_simple, pure_hull, saturation_index
from .epmod.lattice import EpLattice
from .errors import ScenarioError
from .multfield import BaseField, MultElement, exponent_matrix
from .puiseux.places import choose_point

MODEL_NOTE = "classes modulo constants and single-block factors (factor-support model)"


@dataclass(frozen=True)
class Scenario:
    p: int
    vars: tuple
    blocks: tuple  # tuple of frozensets
    unsafe: bool = False

    @property
    def field(self):
        return BaseField(self.p)

    @property
    def n(self):
        return len(self.blocks)

    def uncovered(self):
        covered = set().union(*self.blocks)
        return [v for v in self.vars if v not in covered]

    def single_block(self, support):
        s = set(support)
        return any(s <= b for b in self.blocks)

    def to_json(self):
        return {"p": self.p, "vars": list(self.vars), "blocks": [sorted(b) for b in self.blocks]}

    @classmethod
    def from_json(cls, data, unsafe=False):
        return build_scenario(data.get("p", 0), data.get("vars"), data["blocks"], unsafe=unsafe)


def build_scenario(p, variables, blocks, unsafe=False) -> Scenario:
    """Validate a scenario.  ``variables=None`` takes the union of the blocks.

    With ``unsafe`` the blocks need not cover the variables (exploration only).
    """
    blocks = [tuple(b) for b in blocks]
    if not blocks:
        raise ScenarioError("a scenario needs at least one block")
    if variables is None:
        seen = []
        for b in blocks:
            seen.extend(v for v in b if v not in seen)
        variables = seen
    variables = tuple(variables)
    if len(set(variables)) != len(variables):
        raise ScenarioError("repeated variable")
    for b in blocks:
        if not b:
            raise ScenarioError("empty block")
        foreign = [v for v in b if v not in variables]
        if foreign:
            raise ScenarioError(f"block variables {foreign} are not in {list(variables)}")
    s = Scenario(BaseField(p).p, variables, tuple(frozenset(b) for b in blocks), unsafe)
    missing = s.uncovered()
    if missing and not unsafe:
        raise ScenarioError(f"variables {missing} are not covered by any block")
    return s


@dataclass(frozen=True)
class CompositeClass:
    scenario: Scenario
    factors: tuple  # (Irreducible, EpScalar), sorted, nonzero

    def is_zero(self):
        return not self.factors

    def factor_map(self):
        return dict(self.factors)

    def element(self) -> MultElement:
        return MultElement(self.scenario.field, 1, self.factors)

    def __add__(self, other):
        if other.scenario != self.scenario:
            raise ScenarioError("classes from different scenarios")
        return _make_class(self.scenario, list(self.factors) + list(other.factors))

    def __neg__(self):
        return CompositeClass(self.scenario, tuple((k, -v) for k, v in self.factors))

    def __sub__(self, other):
        return self + (-other)

    def __str__(self):
        return "0" if self.is_zero() else str(self.element())

    def to_json(self):
        return {str(irr): e.to_json() for irr, e in self.factors}


def _make_class(scenario, factors):
    acc = {}
    for irr, e in factors:
        acc[irr] = acc.get(irr, EpScalar(0, 0, scenario.p)) + e
    items = sorted(((k, v) for k, v in acc.items() if not v.is_zero()), key=lambda kv: kv[0].sort_key())
    return CompositeClass(scenario, tuple(items))


def _check_vars(e: MultElement, s: Scenario):
    if e.field.p != s.p:
        raise ScenarioError(f"element over characteristic {e.field.p}, scenario has {s.p}")
    foreign = [v for v in e.support() if v not in s.vars]
    if foreign:
        raise ScenarioError(f"variables {foreign} are not in the scenario")


def class_of(e: MultElement, s: Scenario) -> CompositeClass:
    _check_vars(e, s)
    kept = [(irr, x) for irr, x in e.factors if not s.single_block(irr.support())]
    return _make_class(s, kept)


@dataclass(frozen=True)
class Specialization:
    assignment: dict
    elements: tuple

    def to_json(self):
        return {"assignment": dict(self.assignment), "elements": [str(e) for e in self.elements]}


def specialize(s: Scenario, keep, elems) -> Specialization:
    """Send the variables outside ``keep`` to the smallest values (searched 0, 1, 2, ...
    variable by variable) at which no factor of any element vanishes."""
    elems = list(elems)
    for e in elems:
        _check_vars(e, s)
    keep = set(keep)
    foreign = keep - set(s.vars)
    if foreign:
        raise ScenarioError(f"variables {sorted(foreign)} are not in the scenario")
    kill = [v for v in s.vars if v not in keep]
    assignment = choose_point(elems, kill) if elems else {v: 0 for v in kill}
    return Specialization(assignment, tuple(e.substitute(assignment) for e in elems))


@dataclass(frozen=True)
class ProbeReport:
    scenario: Scenario
    classes: tuple
    index: tuple  # mixed irreducibles
    hull: EpLattice
    invariant_factors: tuple
    m: int
    free: bool
    per_element: tuple

    @property
    def rank(self):
        return self.hull.rank

    def hull_basis(self):
        return [MultElement(self.scenario.field, 1, list(zip(self.index, row))) for row in self.hull.rows]

    def to_json(self):
        return {
            "model": MODEL_NOTE,
            "unsafe": self.scenario.unsafe,
            "rank": self.rank,
            "hull_basis": [str(b) for b in self.hull_basis()],
            "invariant_factors": list(self.invariant_factors),
            "m": self.m,
            "free": self.free,
            "elements": [dict(x) for x in self.per_element],
        }


def locally_free_probe(s: Scenario, elems) -> ProbeReport:
    """Pure hull of the classes' span among all mixed-support exponent vectors."""
    classes = tuple(class_of(e, s) for e in elems)
    ctx = exponent_matrix([c.element() for c in classes], s.field)
    dim = len(ctx.index)
    full = EpLattice.full(s.p, dim)
    span = canonical_lattice(s.p, dim, ctx.rows())
    hull = pure_hull(span, full)
    inv = invariant_factors(coordinates(span, hull), s.p) if span.rows else ()
    # the hull's canonical rows are independent by construction; re-check
    free = canonical_lattice(s.p, dim, hull.rows).rank == hull.rank and all(d != 0 for d in inv)
    per = []
    for c, row in zip(classes, ctx.rows()):
        entry = {"class": str(c)}
        if c.is_zero():
            entry.update(simple=None, index=None)
        else:
            line = canonical_lattice(s.p, dim, [row])
            entry.update(simple=bool(is_simple(row, full)), index=saturation_index(line, full).index)
        per.append(entry)
    return ProbeReport(s, classes, ctx.index, hull, tuple(inv), lcm_all(inv), free, tuple(per))
