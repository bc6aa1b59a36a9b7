"""Dense univariate polynomials over the fields of :mod:`.fields`, with factoring.

Polynomials are lists of field elements, lowest degree first, no trailing
zeros.  Factoring dispatches on the field: Q and F_p use
:mod:`mullat.multfield.factor`; finite extensions use Cantor-Zassenhaus
directly; extensions of Q use the norm method (a squarefree norm over the
subfield is factored recursively and pulled back with gcds).
"""

from __future__ import annotations

import random
from fractions import Fraction

from ..multfield.factor import factor_fp, factor_q
from .fields import ExtensionField, PrimeField, RationalField

_RNG_SEED = 7


def trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def add(K, a, b):
    n = max(len(a), len(b))
    z = K.zero()
    return trim([(a[i] if i < len(a) else z) + (b[i] if i < len(b) else z) for i in range(n)])


def sub(K, a, b):
    n = max(len(a), len(b))
    z = K.zero()
    return trim([(a[i] if i < len(a) else z) - (b[i] if i < len(b) else z) for i in range(n)])


def mul(K, a, b):
    if not a or not b:
        return []
    out = [K.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return trim(out)


def scale(K, a, c):
    return trim([x * c for x in a])


def divmod_(K, a, b):
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = trim(a)
    inv = 1 / b[-1]
    q = [K.zero()] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] * inv
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b[:-1]):
            a[i + k] = a[i + k] - c * y
        a.pop()
        a = trim(a)
    return trim(q), a


def rem(K, a, b):
    return divmod_(K, a, b)[1]


def monic(K, a):
    a = trim(a)
    if not a:
        return a
    inv = 1 / a[-1]
    return [x * inv for x in a]


def gcd(K, a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, rem(K, a, b)
    return monic(K, a)


def xgcd(K, a, b):
    """``(g, s, t)`` with ``s*a + t*b = g`` (``g`` not normalised)."""
    r0, r1 = trim([K.coerce(x) for x in a]), trim([K.coerce(x) for x in b])
    s0, s1, t0, t1 = [K.one()], [], [], [K.one()]
    while r1:
        q, r = divmod_(K, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(K, s0, mul(K, q, s1))
        t0, t1 = t1, sub(K, t0, mul(K, q, t1))
    return r0, s0, t0


def deriv(K, a):
    return trim([a[i] * i for i in range(1, len(a))])


def evaluate(K, a, x):
    acc = K.zero()
    for c in reversed(a):
        acc = acc * x + c
    return acc


def shift(K, a, c):
    """``a(x + c)``."""
    out = []
    for coeff in reversed(a):
        out = add(K, mul(K, out, [c, K.one()]), [coeff])
    return out


def powmod(K, base, e, mod):
    out = [K.one()]
    base = rem(K, base, mod)
    while e:
        if e & 1:
            out = rem(K, mul(K, out, base), mod)
        base = rem(K, mul(K, base, base), mod)
        e >>= 1
    return out


def resultant(K, a, b):
    a, b = trim(a), trim(b)
    if not a or not b:
        return K.zero()
    n, m = len(a) - 1, len(b) - 1
    if m == 0:
        return b[0] ** n
    if n == 0:
        return a[0] ** m
    r = rem(K, a, b)
    if not r:
        return K.zero()
    sign = -1 if (n * m) % 2 else 1
    return resultant(K, b, r) * (b[-1] ** (n - (len(r) - 1))) * sign


def interpolate(K, xs, ys):
    """Newton interpolation through ``(xs[i], ys[i])``."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = [coef[-1]]
    for i in range(n - 2, -1, -1):
        out = add(K, mul(K, out, [-xs[i], K.one()]), [coef[i]])
    return out


# ---------------------------------------------------------------------------
# factorisation


def _pth_root(K, x):
    """p-th root in a finite field (Frobenius is bijective)."""
    return x ** (K.order // K.char)


def squarefree(K, f):
    """``[(g, e)]`` with ``monic(f) = prod g**e``, ``g`` squarefree and coprime."""
    f = monic(K, f)
    if len(f) <= 1:
        return []
    out = {}

    def put(g, e):
        key = tuple(g)
        out[key] = out.get(key, 0) + e

    d = deriv(K, f)
    if not d:
        p = K.char
        root = [_pth_root(K, f[i]) for i in range(0, len(f), p)]
        for g, e in squarefree(K, root):
            put(g, e * p)
        return [(list(g), e) for g, e in out.items()]
    c = gcd(K, f, d)
    w = divmod_(K, f, c)[0]
    i = 1
    while len(w) > 1:
        y = gcd(K, w, c)
        z = divmod_(K, w, y)[0]
        if len(z) > 1:
            put(z, i)
        i += 1
        w = y
        c = divmod_(K, c, y)[0]
    if len(c) > 1:
        p = K.char
        root = [_pth_root(K, c[j]) for j in range(0, len(c), p)]
        for g, e in squarefree(K, root):
            put(g, e * p)
    return [(list(g), e) for g, e in out.items()]


def _ddf(K, f):
    q = K.order
    out = []
    h = [K.zero(), K.one()]
    x = [K.zero(), K.one()]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(K, h, q, f)
        g = gcd(K, f, sub(K, h, x))
        if len(g) > 1:
            out.append((g, d))
            f = divmod_(K, f, g)[0]
            h = rem(K, h, f)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _edf(K, f, d, rng):
    n = len(f) - 1
    if n == d:
        return [f]
    q = K.order
    while True:
        a = trim([K.random_element(rng) for _ in range(n)])
        if len(a) <= 1:
            continue
        if K.char == 2:
            # absolute trace from F_(q^d) down to F_2
            k = K.degree * d
            t, b = a, a
            for _ in range(k - 1):
                b = rem(K, mul(K, b, b), f)
                t = add(K, t, b)
            cand = t
        else:
            cand = sub(K, powmod(K, a, (q ** d - 1) // 2, f), [K.one()])
        g = gcd(K, f, cand)
        if 1 < len(g) < len(f):
            return _edf(K, g, d, rng) + _edf(K, divmod_(K, f, g)[0], d, rng)


def _factor_finite_ext(K, f):
    rng = random.Random(_RNG_SEED)
    out = []
    for g, e in squarefree(K, f):
        for h, d in _ddf(K, g):
            out.extend((irr, e) for irr in _edf(K, h, d, rng))
    return out


def _norm(K, g, s):
    """``Res_y(m(y), g(x - s*y))`` over the base of ``K``; ``m`` = modulus of K."""
    k = K.base
    m = list(K.modulus)
    n, d = len(g) - 1, K.d
    xs, ys = [], []
    for pt in range(n * d + 1):
        x0 = k.coerce(pt)
        lin = [x0, k.coerce(-s)]  # x0 - s*y as a polynomial in y
        acc = []
        for c in reversed(g):
            acc = add(k, mul(k, acc, lin), trim(list(c.c)))
        xs.append(x0)
        ys.append(resultant(k, m, rem(k, acc, m)) if acc else k.zero())
    return interpolate(k, xs, ys)


def _factor_char0_ext(K, f):
    out = []
    theta = K.gen()
    for g, e in squarefree(K, f):
        if len(g) == 2:
            out.append((g, e))
            continue
        for s in (0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, 7, 8, 9, 10):
            N = _norm(K, g, s)
            if len(gcd(K.base, N, deriv(K.base, N))) == 1:
                break
        else:
            raise RuntimeError("no shift gives a squarefree norm")
        _, parts = factor(K.base, N)
        rest = g
        for Ni, _ in parts:
            lifted = shift(K, [K.coerce(c) for c in Ni], theta * s)
            h = gcd(K, rest, lifted)
            if len(h) > 1:
                out.append((h, e))
                rest = divmod_(K, rest, h)[0]
        assert len(rest) == 1
    return out


def factor(K, f):
    """``(lc, [(monic irreducible, multiplicity)])`` for ``f`` over ``K``."""
    f = trim([K.coerce(c) for c in f])
    if not f:
        raise ZeroDivisionError("cannot factor 0")
    lc = f[-1]
    if len(f) == 1:
        return lc, []
    if isinstance(K, RationalField):
        content, fs = factor_q(f)
        out = []
        for g, e in fs:
            g = [Fraction(x) for x in g]
            out.append((monic(K, g), e))
        return lc, out
    if isinstance(K, PrimeField):
        c, fs = factor_fp([x.v for x in f], K.char)
        return lc, [([K.coerce(x) for x in g], e) for g, e in fs]
    if isinstance(K, ExtensionField):
        if K.is_finite:
            return lc, _factor_finite_ext(K, f)
        return lc, _factor_char0_ext(K, f)
    raise TypeError(f"cannot factor over {K!r}")


def absolute_minpoly(K, f):
    """Minimal polynomial over the prime field of a root of irreducible ``f`` over ``K``."""
    while isinstance(K, ExtensionField):
        N = _norm(K, f, 0)
        k = K.base
        # the norm is a power of the minimal polynomial; take its radical
        g = gcd(k, N, deriv(k, N)) if deriv(k, N) else N
        f = monic(k, divmod_(k, N, g)[0]) if len(g) > 1 else monic(k, N)
        K = k
    return f


def poly_str(K, a, var="y"):
    from .fields import _poly_str

    return _poly_str(a, var, K)
