"""Factored elements of the multiplicative group of F(x1, ..., xk)^perf.

An element is ``constant * prod(f_i ** e_i)`` with canonical irreducibles
``f_i`` and exponents in E_p.  Over Q a bare rational is split into primes,
which act as extra free generators: the class group of Q*/{+-1} sits next to
the polynomial irreducibles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .._arith import factorint, lcm_all
from ..epmod import (
    EpLattice,
    EpScalar,
    ExponentVector,
    canonical_lattice,
    invariant_factors,
    pure_hull,
)
from ..epmod.lattice import require_member
from ..errors import DependentInput, NotInRing, ParseError, ReducibleFactor, ZeroInput
from .factor import factor_fp, factor_q
from .poly import BaseField, Poly, ast_to_poly, parse_ast


@dataclass(frozen=True)
class Irreducible:
    """A canonical irreducible polynomial, or (over Q only) a rational prime."""

    poly: Poly | None = None
    prime: int | None = None

    def __post_init__(self):
        if (self.poly is None) == (self.prime is None):
            raise ValueError("exactly one of poly / prime must be given")

    @property
    def is_prime(self):
        return self.prime is not None

    def support(self):
        return () if self.is_prime else self.poly.variables()

    def sort_key(self):
        if self.is_prime:
            return (0, self.prime)
        return (1, self.poly.sort_key())

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def as_poly(self, field):
        return Poly.const(field, self.prime) if self.is_prime else self.poly

    def __str__(self):
        return str(self.prime) if self.is_prime else str(self.poly)

    def __repr__(self):
        return f"Irreducible({self})"


def _fmt_exp(e: EpScalar):
    q = e.as_fraction()
    if q.denominator == 1:
        return str(q.numerator)
    return f"({q})"


def _wrap(irr: Irreducible):
    s = str(irr)
    simple = irr.is_prime or len(irr.poly.terms) == 1 and all(ch.isalnum() or ch == "^" for ch in s)
    return s if simple else f"({s})"


class MultElement:
    """``constant * prod(irr ** exp)``; immutable."""

    __slots__ = ("field", "constant", "factors")

    def __init__(self, field: BaseField, constant=1, factors=None):
        self.field = field
        c = field.coerce(constant)
        if c == 0:
            raise ZeroInput("zero is not in the multiplicative group")
        self.constant = c
        clean = {}
        for irr, e in (factors.items() if isinstance(factors, dict) else (factors or ())):
            e = EpScalar.of(e, field.p)
            clean[irr] = clean.get(irr, EpScalar(0, 0, field.p)) + e
        self.factors = tuple(sorted(((k, v) for k, v in clean.items() if not v.is_zero()), key=lambda kv: kv[0].sort_key()))

    @property
    def p(self):
        return self.field.p

    def factor_map(self):
        return dict(self.factors)

    def exponent(self, irr):
        return self.factor_map().get(irr, EpScalar(0, 0, self.p))

    def is_constant(self):
        return not self.factors

    def support(self):
        return tuple(sorted({v for irr, _ in self.factors for v in irr.support()}))

    def _check(self, other):
        if not isinstance(other, MultElement):
            other = factor(other, self.field)
        if other.field != self.field:
            raise ValueError("elements over different base fields")
        return other

    def __mul__(self, other):
        return combine(self, self._check(other), "multiply")

    __rmul__ = __mul__

    def __truediv__(self, other):
        return combine(self, self._check(other), "divide")

    def __rtruediv__(self, other):
        return combine(self._check(other), self, "divide")

    def __pow__(self, q):
        return pow_scalar(self, q)

    def inverse(self):
        f = self.field
        return MultElement(f, f.inv(self.constant), [(k, -v) for k, v in self.factors])

    def __eq__(self, other):
        if not isinstance(other, MultElement):
            return NotImplemented
        return (self.field, self.constant, self.factors) == (other.field, other.constant, other.factors)

    def __hash__(self):
        return hash((self.field, self.constant, self.factors))

    def without_constant(self):
        return MultElement(self.field, 1, self.factors)

    def __str__(self):
        parts = []
        if self.constant != 1 or not self.factors:
            parts.append(str(self.constant))
        for irr, e in self.factors:
            base = _wrap(irr)
            parts.append(base if e == 1 else f"{base}^{_fmt_exp(e)}")
        return "*".join(parts)

    def __repr__(self):
        return f"MultElement({self.field}, {str(self)!r})"

    # conversions --------------------------------------------------------
    def to_rational_function(self):
        """``(numerator, denominator)`` polynomials; exponents must be integers."""
        f = self.field
        num = Poly.const(f, self.constant)
        den = Poly.const(f, 1)
        for irr, e in self.factors:
            q = e.as_fraction()
            if q.denominator != 1:
                raise NotInRing(f"{irr}^{q} is not a rational function")
            base = irr.as_poly(f)
            if q > 0:
                num = num * base ** int(q)
            else:
                den = den * base ** int(-q)
        return num, den

    def substitute(self, assignment):
        """Apply a partial evaluation to every factor and refactor the result."""
        f = self.field
        out = MultElement(f, self.constant)
        for irr, e in self.factors:
            if irr.is_prime:
                out = combine(out, MultElement(f, 1, [(irr, e)]), "multiply")
                continue
            val = irr.poly.substitute(assignment)
            if val.is_zero():
                raise ZeroInput(f"{irr} vanishes under {assignment}")
            out = combine(out, pow_scalar(_factor_poly(val, complete=True), e), "multiply")
        return out

    def to_json(self):
        return {
            "constant": str(self.constant),
            "factors": [{"poly": str(irr), "exp": e.to_json()} for irr, e in self.factors],
        }

    @classmethod
    def from_json(cls, data, field: BaseField = BaseField(0)):
        out = MultElement(field, field.coerce(Fraction(data.get("constant", "1"))))
        for entry in data.get("factors", []):
            e = EpScalar.from_json(entry["exp"], field.p)
            claimed = parse_poly_checked(entry["poly"], field)
            out = combine(out, pow_scalar(claimed, e), "multiply")
        return out


# ---------------------------------------------------------------------------
# factoring


def _prime_element(field, q):
    """Split a rational into sign and primes (over F_p just a constant)."""
    q = Fraction(q)
    if q == 0:
        raise ZeroInput("cannot factor 0")
    if field.p:
        return MultElement(field, field.coerce(q))
    facs = []
    for prime, e in factorint(abs(q.numerator)).items():
        facs.append((Irreducible(prime=prime), e))
    for prime, e in factorint(q.denominator).items():
        facs.append((Irreducible(prime=prime), -e))
    return MultElement(field, 1 if q > 0 else -1, facs)


def _univariate(field, var, poly):
    coeffs = poly.to_univariate(var)
    if field.p:
        lc, fs = factor_fp(coeffs, field.p)
        return MultElement(field, lc, [(Irreducible(Poly.from_univariate(field, var, g)), e) for g, e in fs])
    content, fs = factor_q(coeffs)
    out = []
    for g, e in fs:
        unit, canon = Poly.from_univariate(field, var, g).normalize()
        content *= unit ** e
        out.append((Irreducible(canon), e))
    return MultElement(field, content, out)


def _has_linear_factor(poly: Poly):
    """Exhaustive search for a degree-1 factor of a bivariate poly over F_p."""
    f = poly.field
    x, y = poly.variables()
    X, Y = Poly.var(f, x), Poly.var(f, y)
    for a, b in product(range(f.p), repeat=2):
        # y + a*x + b divides iff poly vanishes on y = -a*x - b
        if poly.substitute({y: -(X.scale(a)) - b}).is_zero():
            return True
    for b in range(f.p):
        if poly.substitute({x: -b + 0 * Y}).is_zero():
            return True
    return False


def _check_claimed(poly: Poly):
    """Best-effort irreducibility checks on a multivariate claimed irreducible."""
    f = poly.field
    if poly.total_degree() == 1:
        return
    if f.p == 0:
        import sympy

        _, fl = sympy.factor_list(poly.to_sympy())
        if len(fl) != 1 or fl[0][1] != 1:
            raise ReducibleFactor(f"{poly} factors over QQ")
        return
    if len(poly.variables()) == 2 and poly.total_degree() <= 2 and _has_linear_factor(poly):
        raise ReducibleFactor(f"{poly} has a linear factor over GF({f.p})")
    # squarefree sanity: a repeated factor would divide every partial derivative
    if _gcd_nontrivial(poly, [poly.derivative(v) for v in poly.variables()]):
        raise ReducibleFactor(f"{poly} has a repeated factor over GF({f.p})")


def _gcd_nontrivial(a: Poly, others):
    import sympy

    gens = sorted(set(a.variables()).union(*[o.variables() for o in others]))
    g = a.to_sympy(gens)
    for o in others:
        if o.is_zero():
            continue
        g = sympy.gcd(g, o.to_sympy(gens))
        if g.total_degree() == 0:
            return False
    return g.total_degree() > 0


def _factor_poly(poly: Poly, complete: bool) -> MultElement:
    """Factor a nonzero polynomial.

    Constants become the element's constant (polynomial content is never
    split into primes).  Univariate inputs are factored completely; over Q
    multivariate ones too.  Over F_p a multivariate input is split only when
    a linear factor is found by brute force, otherwise it is taken as
    irreducible after the checks in :func:`_check_claimed` (``complete``
    selects whether failing those checks raises or is ignored).
    """
    f = poly.field
    if poly.is_zero():
        raise ZeroInput("cannot factor 0")
    vs = poly.variables()
    if not vs:
        return MultElement(f, poly.constant_value())
    if len(vs) == 1:
        return _univariate(f, vs[0], poly)
    if f.p == 0:
        import sympy

        c, fl = sympy.factor_list(poly.to_sympy())
        out = MultElement(f, Fraction(int(c.p), int(c.q)))
        for g, e in fl:
            unit, canon = Poly.from_sympy(f, g).normalize()
            out = combine(out, MultElement(f, unit ** e, [(Irreducible(canon), e)]), "multiply")
        return out
    unit, canon = poly.normalize()
    if len(vs) == 2 and canon.total_degree() == 2 and _has_linear_factor(canon):
        return MultElement(f, unit) * _split_quadratic(canon)
    if complete:
        _check_claimed(canon)
    return MultElement(f, unit, [(Irreducible(canon), 1)])


def _split_quadratic(poly: Poly):
    """Factor a reducible bivariate quadratic over F_p into linear pieces."""
    f = poly.field
    x, y = poly.variables()
    X, Y = Poly.var(f, x), Poly.var(f, y)
    for a, b in product(range(f.p), repeat=2):
        lin = Y + X.scale(a) + b
        if poly.substitute({y: -(X.scale(a)) - b}).is_zero():
            return _divide_out(poly, lin)
    for b in range(f.p):
        lin = X + b
        if poly.substitute({x: -b + 0 * Y}).is_zero():
            return _divide_out(poly, lin)
    raise AssertionError("no linear factor")


def _divide_out(poly, lin):
    import sympy

    gens = sorted(poly.variables())
    q, r = sympy.div(poly.to_sympy(gens), lin.to_sympy(gens))
    assert r.is_zero
    f = poly.field
    rest = Poly.from_sympy(f, q)
    u1, l1 = lin.normalize()
    u2, l2 = rest.normalize()
    return MultElement(f, f.mul(u1, u2), [(Irreducible(l1), 1), (Irreducible(l2), 1)])


def factor(value, field: BaseField = BaseField(0)) -> MultElement:
    """Factor a rational, a :class:`Poly`, or text such as ``"t^2*(t+1)^-3"``.

    A bare rational splits into sign and primes.  In a product, numeric
    factors stay in the constant.
    """
    if isinstance(value, MultElement):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not field elements")
    if isinstance(value, (int, Fraction)):
        return _prime_element(field, value)
    if isinstance(value, Poly):
        if value.field != field and field != BaseField(0):
            raise ValueError("polynomial over a different field")
        if value.is_constant():
            return _prime_element(value.field, value.constant_value()) if value.field.p == 0 else MultElement(value.field, value.constant_value())
        return _factor_poly(value, complete=True)
    if isinstance(value, str):
        return parse_element(value, field)
    raise TypeError(f"cannot factor {value!r}")


def _element_of_ast(node, field):
    kind = node[0]
    if kind == "mul":
        out = MultElement(field)
        for child in node[1]:
            out = combine(out, _element_of_ast(child, field), "multiply")
        return out
    if kind == "neg":
        return combine(MultElement(field, -1), _element_of_ast(node[1], field), "multiply")
    if kind == "pow":
        base = _element_of_ast(node[1], field)
        return pow_scalar(base, node[2])
    poly = ast_to_poly(node, field)
    if poly.is_zero():
        raise ZeroInput("zero factor")
    return _factor_poly(poly, complete=True)


def parse_element(text: str, field: BaseField = BaseField(0)) -> MultElement:
    node = parse_ast(text)
    poly_only = _ast_constant(node, field)
    if poly_only is not None:
        return _prime_element(field, poly_only) if field.p == 0 else MultElement(field, poly_only)
    if node[0] == "pow" and node[1][0] == "num":
        return pow_scalar(_prime_element(field, node[1][1]), node[2])
    return _element_of_ast(node, field)


def _ast_constant(node, field):
    try:
        poly = ast_to_poly(node, field)
    except ParseError:
        return None
    if poly.is_zero():
        raise ZeroInput("cannot factor 0")
    return poly.constant_value() if poly.is_constant() else None


def parse_poly_checked(text, field):
    """A single claimed irreducible from JSON input, verified as far as we can."""
    poly = ast_to_poly(parse_ast(text), field)
    if poly.is_constant():
        v = poly.constant_value()
        if field.p == 0 and Fraction(v).denominator == 1 and abs(v) > 1 and len(factorint(abs(int(v)))) == 1 and list(factorint(abs(int(v))).values())[0] == 1:
            return MultElement(field, 1 if v > 0 else -1, [(Irreducible(prime=abs(int(v))), 1)])
        raise ReducibleFactor(f"{text!r} is not an irreducible")
    unit, canon = poly.normalize()
    vs = canon.variables()
    if len(vs) == 1:
        fac = _univariate(field, vs[0], canon)
        if len(fac.factors) != 1 or fac.factors[0][1] != 1:
            raise ReducibleFactor(f"{text!r} factors as {fac}")
    else:
        _check_claimed(canon)
    return MultElement(field, unit, [(Irreducible(canon), 1)])


# ---------------------------------------------------------------------------
# group operations


def combine(a: MultElement, b: MultElement, sign: str = "multiply") -> MultElement:
    if a.field != b.field:
        raise ValueError("elements over different base fields")
    f = a.field
    if sign == "multiply":
        const = f.mul(a.constant, b.constant)
        facs = list(a.factors) + list(b.factors)
    elif sign == "divide":
        const = f.div(a.constant, b.constant)
        facs = list(a.factors) + [(k, -v) for k, v in b.factors]
    else:
        raise ValueError(f"unknown sign {sign!r}")
    return MultElement(f, const, facs)


def pow_scalar(a: MultElement, q) -> MultElement:
    """``a ** q`` for ``q`` in E_p.

    Over F_p the constant's ``p**k``-th root is itself (Frobenius fixes F_p),
    so ``c ** (n / p**k) == c ** n``.
    """
    f = a.field
    q = EpScalar.of(q, f.p)
    const = f.power(a.constant, q.num)
    return MultElement(f, const, [(k, v * q) for k, v in a.factors])


# ---------------------------------------------------------------------------
# exponent lattices


@dataclass(frozen=True)
class ExponentMatrixContext:
    field: BaseField
    index: tuple  # Irreducible, sorted
    matrix: tuple  # rows of EpScalar

    @property
    def p(self):
        return self.field.p

    def rows(self):
        return [ExponentVector(row, self.p) for row in self.matrix]

    def lattice(self) -> EpLattice:
        return canonical_lattice(self.p, len(self.index), self.rows())

    def full(self) -> EpLattice:
        return EpLattice.full(self.p, len(self.index))

    def element(self, vector) -> MultElement:
        """The constant-free element with the given exponent vector."""
        v = ExponentVector.of(vector, self.p)
        return MultElement(self.field, 1, list(zip(self.index, v.entries)))

    def int_matrix(self):
        return [[int(e.as_fraction()) for e in row] for row in self.matrix]


def exponent_matrix(elems, field: BaseField | None = None) -> ExponentMatrixContext:
    elems = list(elems)
    if field is None:
        field = elems[0].field if elems else BaseField(0)
    for e in elems:
        if e.field != field:
            raise ValueError("elements over different base fields")
    index = sorted({irr for e in elems for irr, _ in e.factors}, key=Irreducible.sort_key)
    zero = EpScalar(0, 0, field.p)
    matrix = tuple(tuple(e.factor_map().get(irr, zero) for irr in index) for e in elems)
    return ExponentMatrixContext(field, tuple(index), matrix)


def independent_mod_constants(elems) -> bool:
    elems = list(elems)
    if not elems:
        return True
    ctx = exponent_matrix(elems)
    return ctx.lattice().rank == len(elems)


@dataclass(frozen=True)
class HullBasis:
    """Pure hull of ``span(elems)`` inside the lattice of all exponent vectors."""

    basis: tuple  # MultElement classes (constant 1)
    inclusion: tuple  # rows: elems written in the basis (EpScalar)
    m: int
    invariant_factors: tuple
    context: ExponentMatrixContext
    hull: EpLattice


def pure_hull_basis_mod_constants(elems) -> HullBasis:
    elems = list(elems)
    ctx = exponent_matrix(elems)
    span = ctx.lattice()
    if span.rank != len(elems):
        raise DependentInput("elements are multiplicatively dependent modulo constants")
    hull = pure_hull(span, ctx.full())
    inclusion = tuple(tuple(require_member(r, hull)) for r in ctx.rows())
    inv = invariant_factors(inclusion, ctx.p) if inclusion else ()
    return HullBasis(
        basis=tuple(ctx.element(r) for r in hull.rows),
        inclusion=inclusion,
        m=lcm_all(inv),
        invariant_factors=inv,
        context=ctx,
        hull=hull,
    )


def rationals_mod_torsion(q, primes=None):
    """Exponent vector of ``q`` in Q*/{+-1} over ``primes`` (default: its own)."""
    el = _prime_element(BaseField(0), q)
    fmap = {irr.prime: e for irr, e in el.factors}
    if primes is None:
        primes = sorted(fmap)
    missing = set(fmap) - set(primes)
    if missing:
        raise ValueError(f"primes {sorted(missing)} missing from the index")
    return tuple(primes), ExponentVector([fmap.get(pr, 0) for pr in primes], 0)
