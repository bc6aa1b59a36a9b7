"""Newton-Puiseux root finding for polynomials with series coefficients.

The input coefficients are read as exact finite sums (their truncation, if
any, is ignored while solving).  Each branch refines a partial root ``s``
term by term: the Taylor coefficients ``G_k`` of ``f(s + y)`` give a Newton
polygon on ``k = 0..mu`` (``mu`` roots cluster around ``s``); every edge of
slope ``-gamma`` contributes the next term ``c t^gamma`` with ``c`` a root of
the edge polynomial.  Irreducible edge-polynomial factors of degree > 1
extend the coefficient field; one branch then stands for all its conjugates.

The Taylor coefficients are computed in a window large enough to decide
every edge with ``gamma < prec``; edges at or beyond ``prec`` are final.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .._arith import p_adic_valuation
from ..errors import CoefficientFieldNotClosed, InseparableStep, PrecisionError, ZeroInput
from . import upoly
from .fields import ExtensionField, common_field
from .series import PuiseuxSeries

MAX_EXTENSION_DEGREE = 4
MAX_STEPS = 400
# a branch whose exponents need p**MAX_P_DEPTH in the denominator is not
# resolved by the classical algorithm
MAX_P_DEPTH = 4


@dataclass(frozen=True)
class PuiseuxRoot:
    series: PuiseuxSeries
    multiplicity: int
    conjugates: int

    @property
    def field(self):
        return self.series.field

    @property
    def exact(self):
        return self.series.trunc is None

    def count(self):
        return self.multiplicity * self.conjugates

    def __str__(self):
        txt = str(self.series)
        extra = [f"multiplicity {self.multiplicity}"]
        if self.conjugates > 1:
            extra.append(f"{self.conjugates} conjugates over {self.field!r}")
        return f"{txt}  [{', '.join(extra)}]"


def _taylor(coeffs, s, upto):
    """``G_0..G_upto`` where ``f(s + y) = sum G_k y^k``."""
    b = list(coeffs)
    n = len(b) - 1
    for k in range(min(upto, n - 1) + 1):
        for i in range(n - 1, k - 1, -1):
            b[i] = b[i] + s * b[i + 1]
    return b[: upto + 1]


def _lower_hull(points):
    hull = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point if it lies on or above the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


class _Solver:
    def __init__(self, coeffs, prec):
        self.prec = Fraction(prec)
        coeffs = [c.exact() for c in coeffs]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        if not coeffs:
            raise ZeroInput("the zero polynomial has no root list")
        K = coeffs[0].field
        for c in coeffs[1:]:
            K = common_field(K, c.field)
        self.K0 = K
        self.var = coeffs[0].var
        self.coeffs = [c.with_field(K) for c in coeffs]
        self.n = len(coeffs) - 1
        self.p = K.char
        vals = [c.valuation() for c in self.coeffs if c.terms]
        self.vmin = min(vals)
        self.roots = []

    def lifted(self, K):
        return [c.with_field(K) for c in self.coeffs]

    def window_series(self, K, s, window):
        """Taylor coefficients truncated so that every one is known below ``window``."""
        coeffs = self.lifted(K)
        vs = s.valuation() if s.terms else 0
        slack = max(0, -vs) * self.n + max(0, -self.vmin)
        work = window + slack
        for _ in range(60):
            cs = [c.truncate(work) for c in coeffs]
            G = _taylor(cs, s.truncate(work) if s.terms else s, self.n)
            worst = min(g.trunc for g in G if g.trunc is not None)
            if worst >= window:
                return G
            work += window - worst + 1
        raise PrecisionError("could not reach the working window")

    def exact_taylor(self, K, s):
        return _taylor(self.lifted(K), s, self.n)

    def run(self):
        zero = PuiseuxSeries(self.K0, [], None, self.var)
        self.branch(self.K0, zero, None, self.n, 0)
        return self.roots

    def emit(self, s, mult, K, exact):
        series = s if exact else s.truncate(self.prec)
        conj = K.degree // self.K0.degree
        self.roots.append(PuiseuxRoot(series, mult, conj))

    def branch(self, K, s, gamma_prev, mu, steps):
        if steps > MAX_STEPS:
            if self.p:
                raise InseparableStep("no convergence: the expansion needs ever deeper p-th roots")
            raise PrecisionError("step limit reached")
        # window: v_mu first, then enough for every edge with gamma < prec
        window = self.prec + 1
        while True:
            G = self.window_series(K, s, window)
            if G[mu].terms:
                break
            window = 2 * window + 1
        v_mu = G[mu].valuation()
        need = max(v_mu + mu * self.prec, self.prec) + 1
        if need > window:
            G = self.window_series(K, s, need)

        start = 0
        if not G[0].terms:
            exact = self.exact_taylor(K, s)
            if exact[0].is_zero():
                start = next(k for k in range(1, mu + 1) if not exact[k].is_zero())
                self.emit(s, start, K, exact=True)
                if start == mu:
                    return
                G = [exact[k] if k < start else G[k] for k in range(len(G))]
        known = [(k, G[k].valuation()) for k in range(start, mu + 1) if G[k].terms]
        hull = _lower_hull(known)
        edges = list(zip(hull, hull[1:]))
        v0 = G[0].valuation() if start == 0 else None
        residual_ok = start > 0 or v0 >= self.prec
        final_to = hull[0][0]
        for (k1, y1), (k2, y2) in edges:
            gamma = (y1 - y2) / (k2 - k1)
            if gamma >= self.prec and residual_ok:
                final_to = k2
        if final_to > start:
            self.emit(s, final_to - start, K, exact=False)
        for (k1, y1), (k2, y2) in edges:
            if k2 <= final_to:
                continue
            gamma = (y1 - y2) / (k2 - k1)
            if gamma_prev is not None and gamma <= gamma_prev:
                raise PrecisionError("Newton polygon slope did not increase")
            if self.p and p_adic_valuation(gamma.denominator, self.p) >= MAX_P_DEPTH:
                raise InseparableStep(
                    f"exponent {gamma} needs a p^{MAX_P_DEPTH} root: an inseparable "
                    "(Artin-Schreier type) step outside the classical algorithm"
                )
            poly = [K.zero()] * (k2 - k1 + 1)
            for k in range(k1, k2 + 1):
                if G[k].terms and G[k].valuation() == y1 - gamma * (k - k1):
                    poly[k - k1] = G[k].leading()[1]
            _, factors = upoly.factor(K, poly)
            for irr, e in factors:
                if len(irr) == 2:
                    L, c = K, -irr[0] / irr[1]
                else:
                    L = self.extend(K, irr)
                    c = L.gen()
                term = PuiseuxSeries(L, [(gamma, c)], None, self.var)
                self.branch(L, s.with_field(L) + term, gamma, e, steps + 1)

    def extend(self, K, irr):
        degree = K.degree * (len(irr) - 1)
        if degree > MAX_EXTENSION_DEGREE:
            minpoly = upoly.absolute_minpoly(K, irr)
            raise CoefficientFieldNotClosed(
                f"root needs {upoly.poly_str(K, irr, 'c')} over {K!r} "
                f"(degree {degree} over the prime field, cap {MAX_EXTENSION_DEGREE}); "
                f"minimal polynomial {upoly.poly_str(K.tower()[0], minpoly, 'c')}",
                minpoly=minpoly,
            )
        return ExtensionField(K, irr)


def newton_puiseux(coeffs, prec):
    """Roots of ``sum coeffs[k] y^k`` to precision ``prec``.

    Returns :class:`PuiseuxRoot` records; ``multiplicity * conjugates``
    summed over the list equals the degree.  Exact roots (finite sums) come
    back without a truncation.
    """
    coeffs = [c if isinstance(c, PuiseuxSeries) else PuiseuxSeries.constant(c) for c in coeffs]
    return _Solver(coeffs, prec).run()


def evaluate_poly(coeffs, y):
    """Horner evaluation of a coefficient list at a series."""
    acc = None
    for c in reversed(coeffs):
        acc = c if acc is None else acc * y + c
    return acc
