"""Hermite and Smith normal forms over Z, with unimodular transforms.

Matrices are lists of lists of Python ints (arbitrary precision); nothing here
ever reduces modulo anything except :func:`nullspace_mod_p`, which is only
used to find candidate vectors that are then checked exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a, ncols=None):
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def matmul(a, b):
    if not a:
        return []
    if not b:
        return [[] for _ in a]
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def _copy(a):
    return [list(map(int, row)) for row in a]


def hnf_with_transform(a, ncols=None):
    """Row Hermite normal form.

    Returns ``(H, U)`` where ``U`` is unimodular, ``U @ a`` equals ``H`` padded
    with zero rows, ``H`` has no zero rows, pivots are positive, and the
    entries above each pivot lie in ``[0, pivot)``.
    """
    h = _copy(a)
    m = len(h)
    n = len(h[0]) if m else (ncols or 0)
    u = identity(m)
    r = 0
    for j in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if h[i][j] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(h[i][j]))
            if piv != r:
                h[r], h[piv] = h[piv], h[r]
                u[r], u[piv] = u[piv], u[r]
            done = True
            for i in range(r + 1, m):
                if h[i][j]:
                    q = h[i][j] // h[r][j]
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if h[i][j]:
                        done = False
            if done:
                break
        if r < m and h[r][j] != 0:
            if h[r][j] < 0:
                h[r] = [-x for x in h[r]]
                u[r] = [-x for x in u[r]]
            for i in range(r):
                q = h[i][j] // h[r][j]
                if q:
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
            r += 1
    return h[:r], u


def hnf(a, ncols=None):
    return hnf_with_transform(a, ncols)[0]


def pivots(h):
    """Column index of the leading nonzero entry of each row."""
    return [next(j for j, x in enumerate(row) if x) for row in h]


def integer_left_kernel(a, ncols=None):
    """A Z-basis of ``{x : x @ a = 0}`` (rows), in Hermite normal form."""
    m = len(a)
    if m == 0:
        return []
    h, u = hnf_with_transform(a, ncols)
    return hnf(u[len(h):], m) if len(h) < m else []


def saturation(rows, ncols):
    """Basis of ``Q·span(rows) ∩ Z^ncols``."""
    if not rows:
        return []
    right_kernel = integer_left_kernel(transpose(rows))
    if not right_kernel:
        return identity(ncols)
    return integer_left_kernel(transpose(right_kernel))


def solve_hnf(h, v):
    """Integer ``c`` with ``c @ h == v`` for ``h`` in HNF, or ``None``."""
    residual = list(v)
    coeffs = []
    for row, pc in zip(h, pivots(h)):
        if any(residual[:pc]):
            return None
        q, rem = divmod(residual[pc], row[pc])
        if rem:
            return None
        coeffs.append(q)
        if q:
            residual = [x - q * y for x, y in zip(residual, row)]
    if any(residual):
        return None
    return coeffs


def determinant(a):
    """Exact determinant via fraction-free Bareiss elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = _copy(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rational_inverse(a):
    """Inverse of a square nonsingular matrix with Fraction entries."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def unimodular_inverse(a):
    inv = rational_inverse(a)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def rank_q(a):
    """Rank over Q."""
    return len(hnf(a)) if a else 0


def nullspace_mod_p(a, p):
    """Basis of ``{x in F_p^ncols : a @ x = 0}`` as lists of ints in [0, p)."""
    if not a:
        return []
    m, n = len(a), len(a[0])
    rows = [[x % p for x in row] for row in a]
    pivot_cols = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivot_cols]
    basis = []
    for fc in free:
        x = [0] * n
        x[fc] = 1
        for i, pc in enumerate(pivot_cols):
            x[pc] = (-rows[i][fc]) % p
        basis.append(x)
    return basis


@dataclass(frozen=True)
class SnfResult:
    """``U @ A @ V`` is diagonal with ``invariants`` (then zeros) on the diagonal."""

    U: tuple
    V: tuple
    invariants: tuple
    shape: tuple

    def diagonal_matrix(self):
        m, n = self.shape
        d = [[0] * n for _ in range(m)]
        for i, x in enumerate(self.invariants):
            d[i][i] = x
        return d


def snf(a, ncols=None) -> SnfResult:
    """Smith normal form of an integer matrix (any shape, zero allowed)."""
    s = _copy(a)
    m = len(s)
    n = len(s[0]) if m else (ncols or 0)
    u = identity(m)
    v = identity(n)

    def swap_rows(i, k):
        s[i], s[k] = s[k], s[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for row in s:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    t = 0
    while t < min(m, n):
        nz = [(abs(s[i][j]), i, j) for i in range(t, m) for j in range(t, n) if s[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            for i in range(t + 1, m):
                q = s[i][t] // s[t][t]
                if q:
                    s[i] = [x - q * y for x, y in zip(s[i], s[t])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[t])]
            for j in range(t + 1, n):
                q = s[t][j] // s[t][t]
                if q:
                    for row in s:
                        row[j] -= q * row[t]
                    for row in v:
                        row[j] -= q * row[t]
            rest = [(abs(s[i][t]), i, t) for i in range(t + 1, m) if s[i][t]]
            rest += [(abs(s[t][j]), t, j) for j in range(t + 1, n) if s[t][j]]
            if rest:
                _, i1, j1 = min(rest)
                if i1 != t:
                    swap_rows(t, i1)
                else:
                    swap_cols(t, j1)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if s[i][j] % s[t][t]),
                None,
            )
            if bad is None:
                break
            s[t] = [x + y for x, y in zip(s[t], s[bad])]
            u[t] = [x + y for x, y in zip(u[t], u[bad])]
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    invariants = tuple(s[i][i] for i in range(min(m, n)) if s[i][i])
    return SnfResult(
        U=tuple(map(tuple, u)),
        V=tuple(map(tuple, v)),
        invariants=invariants,
        shape=(m, n),
    )
