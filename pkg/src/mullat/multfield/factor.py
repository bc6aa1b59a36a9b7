"""Univariate factorisation over F_p and Q.

Dense coefficient lists, lowest degree first.  Over F_p: squarefree
decomposition, distinct-degree and equal-degree (Cantor-Zassenhaus)
splitting.  Over Q: squarefree decomposition, factorisation modulo a good
prime, multifactor Hensel lifting and Zassenhaus recombination.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import gcd, isqrt

from .._arith import is_prime, lcm_all

# deterministic splitting; results never depend on the draws, only timing does
_RNG_SEED = 20240613


# ---------------------------------------------------------------------------
# dense arithmetic over F_p


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def fp_norm(a, p):
    return _trim([x % p for x in a])


def fp_add(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def fp_sub(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return fp_norm(out, p)


def fp_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] = (a[i + k] - c * y) % p
        _trim(a)
    return _trim(q), a


def fp_monic(a, p):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def fp_gcd(a, b, p):
    a, b = fp_norm(a, p), fp_norm(b, p)
    while b:
        a, b = b, fp_divmod(a, b, p)[1]
    return fp_monic(a, p)


def fp_xgcd(a, b, p):
    """``(g, s, t)`` with ``s*a + t*b = g`` monic."""
    r0, r1 = fp_norm(a, p), fp_norm(b, p)
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = fp_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, fp_sub(s0, fp_mul(q, s1, p), p)
        t0, t1 = t1, fp_sub(t0, fp_mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return (
        [x * inv % p for x in r0],
        [x * inv % p for x in s0],
        [x * inv % p for x in t0],
    )


def fp_deriv(a, p):
    return fp_norm([i * a[i] for i in range(1, len(a))], p)


def fp_powmod(base, e, mod, p):
    out = [1]
    base = fp_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            out = fp_divmod(fp_mul(out, base, p), mod, p)[1]
        base = fp_divmod(fp_mul(base, base, p), mod, p)[1]
        e >>= 1
    return out


def _merge(pairs):
    acc = {}
    for f, e in pairs:
        key = tuple(f)
        acc[key] = acc.get(key, 0) + e
    return [(list(f), e) for f, e in acc.items()]


def fp_squarefree(f, p):
    """Squarefree decomposition ``[(g, e)]`` of a monic ``f`` over F_p."""
    f = fp_monic(fp_norm(f, p), p)
    if len(f) <= 1:
        return []
    out = []
    d = fp_deriv(f, p)
    if not d:
        root = [f[i] for i in range(0, len(f), p)]
        return _merge([(g, e * p) for g, e in fp_squarefree(root, p)])
    c = fp_gcd(f, d, p)
    w = fp_divmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = fp_gcd(w, c, p)
        z = fp_divmod(w, y, p)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = fp_divmod(c, y, p)[0]
    if len(c) > 1:
        root = [c[i] for i in range(0, len(c), p)]
        out.extend((g, e * p) for g, e in fp_squarefree(root, p))
    return _merge(out)


def fp_distinct_degree(f, p):
    """Split a squarefree monic ``f`` into ``[(g, d)]`` products of degree-d irreducibles."""
    out = []
    h = [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = fp_powmod(h, p, f, p)
        g = fp_gcd(f, fp_sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, d))
            f = fp_divmod(f, g, p)[0]
            h = fp_divmod(h, f, p)[1]
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def fp_equal_degree(f, d, p, rng=None):
    """Irreducible factors of ``f``, a product of distinct degree-d monic irreducibles."""
    n = len(f) - 1
    if n == d:
        return [f]
    rng = rng or random.Random(_RNG_SEED)
    while True:
        a = fp_norm([rng.randrange(p) for _ in range(n)], p)
        if len(a) <= 1:
            continue
        if p == 2:
            t, b = a, a
            for _ in range(d - 1):
                b = fp_divmod(fp_mul(b, b, p), f, p)[1]
                t = fp_add(t, b, p)
            candidate = t
        else:
            candidate = fp_sub(fp_powmod(a, (p ** d - 1) // 2, f, p), [1], p)
        g = fp_gcd(f, candidate, p)
        if 1 < len(g) < len(f):
            return fp_equal_degree(g, d, p, rng) + fp_equal_degree(fp_divmod(f, g, p)[0], d, p, rng)


def _poly_key(f):
    return (len(f), list(reversed(f)))


def factor_fp(f, p):
    """Factor over F_p: returns ``(lc, [(monic irreducible, multiplicity)])``."""
    f = fp_norm(f, p)
    if not f:
        raise ZeroDivisionError("cannot factor 0")
    lc = f[-1]
    out = []
    rng = random.Random(_RNG_SEED)
    for g, e in fp_squarefree(f, p):
        for h, d in fp_distinct_degree(g, p):
            for irr in fp_equal_degree(h, d, p, rng):
                out.append((irr, e))
    out = _merge(out)
    out.sort(key=lambda fe: _poly_key(fe[0]))
    return lc, out


def fp_is_irreducible(f, p):
    lc, fs = factor_fp(f, p)
    return len(fs) == 1 and fs[0][1] == 1


# ---------------------------------------------------------------------------
# dense arithmetic over Q (Fractions) and Z


def _qtrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def q_divmod(a, b):
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    _qtrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    _qtrim(a)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] -= c * y
        _qtrim(a)
    return _qtrim(q), a


def q_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _qtrim(out)


def q_monic(a):
    return [Fraction(x) / a[-1] for x in a]


def q_gcd(a, b):
    a, b = _qtrim([Fraction(x) for x in a]), _qtrim([Fraction(x) for x in b])
    while b:
        a, b = b, q_divmod(a, b)[1]
    return q_monic(a) if a else a


def q_deriv(a):
    return _qtrim([i * Fraction(a[i]) for i in range(1, len(a))])


def primitive(a):
    """``(content, primitive integer polynomial)`` with positive leading coefficient."""
    a = [Fraction(x) for x in a]
    den = lcm_all(x.denominator for x in a)
    ints = [int(x * den) for x in a]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if ints[-1] < 0:
        g = -g
    return Fraction(g, den), [x // g for x in ints]


def q_squarefree(f):
    """Yun's algorithm over Q; returns ``[(primitive integer g, e)]``."""
    f = q_monic(_qtrim([Fraction(x) for x in f]))
    out = []
    if len(f) <= 1:
        return out
    d = q_deriv(f)
    a = q_gcd(f, d)
    b = q_divmod(f, a)[0]
    c = q_divmod(d, a)[0]
    dd = [x - y for x, y in _zip_pad(c, q_deriv(b))]
    dd = _qtrim(dd)
    i = 1
    while len(b) > 1:
        a = q_gcd(b, dd)
        if len(a) > 1:
            out.append((primitive(a)[1], i))
        b = q_divmod(b, a)[0]
        c = q_divmod(dd, a)[0]
        dd = _qtrim([x - y for x, y in _zip_pad(c, q_deriv(b))])
        i += 1
    return out


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return [((a[i] if i < len(a) else 0), (b[i] if i < len(b) else 0)) for i in range(n)]


def z_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def z_exact_div(a, b):
    """``a / b`` in Z[x] or ``None`` if it does not divide."""
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c, r = divmod(a[-1], b[-1])
        if r:
            return None
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] -= c * y
        a.pop()
    if any(a):
        return None
    while q and q[-1] == 0:
        q.pop()
    return q


def _symmetric(a, m):
    half = m // 2
    return [((x % m) - m if x % m > half else x % m) for x in a]


def _hensel_pair(f, u, w, p, k):
    """Lift monic ``u*w ≡ f (mod p)`` to modulus ``p**k`` (``f`` monic mod p**k)."""
    _, s, t = fp_xgcd(u, w, p)
    modulus = p
    for _ in range(1, k):
        err = [x // modulus for x in _zip_sub(f, z_mul(u, w))]
        err = fp_norm(err, p)
        # solve sigma*u + tau*w ≡ err (mod p) with deg tau < deg u
        tau = fp_divmod(fp_mul(err, t, p), u, p)[1]
        sigma = fp_divmod(fp_sub(err, fp_mul(tau, w, p), p), u, p)[0]
        u = _zip_add(u, [x * modulus for x in tau])
        w = _zip_add(w, [x * modulus for x in sigma])
        modulus *= p
        u = [x % modulus for x in u]
        w = [x % modulus for x in w]
    return u, w


def _zip_sub(a, b):
    return [x - y for x, y in _zip_pad(a, b)]


def _zip_add(a, b):
    return [x + y for x, y in _zip_pad(a, b)]


def _hensel_multi(f, factors, p, k):
    """Lift ``f ≡ prod(factors) (mod p)`` (all monic) to modulus ``p**k``."""
    if len(factors) == 1:
        return [[x % p ** k for x in f]]
    rest = [1]
    for g in factors[1:]:
        rest = fp_mul(rest, g, p)
    u, w = _hensel_pair(f, factors[0], rest, p, k)
    return [u] + _hensel_multi(w, factors[1:], p, k)


def _zassenhaus(f):
    """Factor a primitive squarefree integer polynomial of degree >= 2."""
    n = len(f) - 1
    lc = f[-1]
    norm2 = isqrt(sum(x * x for x in f)) + 1
    bound = 2 ** n * norm2 * abs(lc)
    prime = None
    for cand in range(3, 10_000, 2):
        if not is_prime(cand) or lc % cand == 0:
            continue
        fp = fp_norm(f, cand)
        if len(fp_gcd(fp, fp_deriv(fp, cand), cand)) == 1:
            prime = cand
            break
    p = prime
    _, modfactors = factor_fp(f, p)
    modfactors = [g for g, _ in modfactors]
    if len(modfactors) == 1:
        return [f]
    k = 1
    while p ** k <= 2 * bound:
        k += 1
    pk = p ** k
    inv_lc = pow(lc, -1, pk)
    f_monic = [x * inv_lc % pk for x in f]
    lifted = _hensel_multi(f_monic, modfactors, p, k)
    found = []
    remaining = list(range(len(lifted)))
    g = list(f)
    size = 1
    while 2 * size <= len(remaining):
        progress = False
        for subset in combinations(remaining, size):
            cand = [g[-1] % pk]
            for i in subset:
                cand = [x % pk for x in z_mul(cand, lifted[i])]
            cand = _symmetric(cand, pk)
            _, cand = primitive(cand)
            q = z_exact_div(g, cand)
            if q is not None:
                found.append(cand)
                g = q
                remaining = [i for i in remaining if i not in subset]
                progress = True
                break
        if not progress:
            size += 1
    if len(g) > 1:
        found.append(primitive(g)[1])
    return found


def factor_q(f):
    """Factor over Q: ``(content, [(primitive integer irreducible, multiplicity)])``.

    ``f == content * prod(g ** e)`` exactly, each ``g`` has positive leading
    coefficient.
    """
    f = _qtrim([Fraction(x) for x in f])
    if not f:
        raise ZeroDivisionError("cannot factor 0")
    content, prim = primitive(f)
    out = []
    for g, e in q_squarefree(prim):
        if len(g) == 2:
            out.append((g, e))
            continue
        for h in _zassenhaus(g):
            out.append((h, e))
    out = _merge(out)
    prod = [1]
    for g, e in out:
        for _ in range(e):
            prod = z_mul(prod, g)
    content = Fraction(content) * Fraction(prim[-1], prod[-1])
    out.sort(key=lambda fe: _poly_key(fe[0]))
    return content, out


def q_is_irreducible(f):
    _, fs = factor_q(f)
    return len(fs) == 1 and fs[0][1] == 1
