"""Small integer helpers (trial division is plenty at desk scale)."""

from functools import reduce
from math import gcd, isqrt


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def factorint(n):
    """Prime factorisation of ``|n|`` as an ordered ``{prime: exponent}`` dict."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def smallest_prime_factor(n):
    return min(factorint(n))


def strip_prime(n, p):
    """Remove every factor ``p`` from ``n``; ``p = 0`` leaves ``n`` alone."""
    if p == 0 or n == 0:
        return n
    while n % p == 0:
        n //= p
    return n


def p_adic_valuation(n, p):
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def lcm(a, b):
    return abs(a * b) // gcd(a, b) if a and b else 0


def lcm_all(values, start=1):
    return reduce(lcm, values, start)


def divisors(n):
    n = abs(n)
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def primes_up_to(n):
    return [k for k in range(2, n + 1) if is_prime(k)]
