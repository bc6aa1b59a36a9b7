"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

Every check compares the library against an oracle that does not call the
code under test (naive elimination, determinantal divisors, membership through an adjugate,
Eisenstein's criterion, sympy expansion, construction-known factorizations).
"""

import itertools
import random
import time
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

import numpy as np
import pytest
import sympy

from mullat.compos import build_scenario, locally_free_probe, specialize
from mullat.epmod import canonical_lattice, is_simple, pure_hull, saturation_index, snf
from mullat.kummer import kummer_group, realizable_twists, split_inclusion
from mullat.multfield import exponent_matrix, factor, independent_mod_constants, rationals_mod_torsion
from mullat.puiseux import QQ, ExtensionField, PuiseuxSeries, Subfield, descend_root, evaluate_poly, newton_puiseux, parse_ypoly
from mullat.puiseux.fields import AlgElt

SNF_TIME_LIMIT = 5.0
NEWTON_TIME_LIMIT = 10.0


@pytest.fixture
def report(capsys):
    def emit(number, name, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] AC{number:02d} {name}: {detail}")
        assert ok, detail

    return emit


# --- oracle helpers -------------------------------------------------------------------


def det(m):
    """Laplace expansion; fine for the 4x4 matrices used here."""
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * det([row[:j] + row[j + 1:] for row in m[1:]]) for j in range(n) if m[0][j])


def determinantal_divisors(a):
    rows, cols = len(a), len(a[0]) if a else 0
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                g = gcd(g, det([[a[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        out.append(g)
    return out


def invariants_by_minors(a):
    d = determinantal_divisors(a)
    return [d[0]] + [d[i] // d[i - 1] for i in range(1, len(d))] if d else []


def invariants_by_elimination(a):
    """Plain row/column operations: move the smallest entry to the corner, clear, repeat."""
    m = [list(r) for r in a]
    diag = []
    while m and m[0]:
        nz = [(abs(v), i, j) for i, row in enumerate(m) for j, v in enumerate(row) if v]
        if not nz:
            break
        _, i, j = min(nz)
        m[0], m[i] = m[i], m[0]
        for row in m:
            row[0], row[j] = row[j], row[0]
        while True:
            piv = m[0][0]
            for row in m[1:]:
                q = row[0] // piv
                for k in range(len(row)):
                    row[k] -= q * m[0][k]
            q_cols = [m[0][k] // piv for k in range(len(m[0]))]
            for k in range(1, len(m[0])):
                for row in m:
                    row[k] -= q_cols[k] * row[0]
            rest = [(abs(v), i, j) for i, row in enumerate(m) for j, v in enumerate(row)
                    if v and (i == 0 or j == 0) and (i, j) != (0, 0)]
            if not rest:
                break
            _, i, j = min(rest)
            m[0], m[i] = m[i], m[0]
            for row in m:
                row[0], row[j] = row[j], row[0]
        diag.append(abs(m[0][0]))
        m = [row[1:] for row in m[1:]]
    # diagonal to divisibility chain
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            g = gcd(diag[i], diag[j])
            diag[i], diag[j] = g, diag[i] * diag[j] // g
    return diag


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


class Membership:
    """``x in span(B)`` over Z (or Z[1/p]) for independent integer rows ``B``, vectorised.

    On pivot columns ``P`` with ``det(B_P) = d``: ``c = x_P adj(B_P) / d``.
    """

    def __init__(self, basis, p=0):
        self.B = np.array(basis, dtype=np.int64).reshape(len(basis), -1)
        r = self.B.shape[0]
        self.p = p
        self.cols, self.d, self.adj = [], 1, None
        if r == 0:
            return
        for cols in itertools.combinations(range(self.B.shape[1]), r):
            sub = [[int(self.B[i, j]) for j in cols] for i in range(r)]
            d = det(sub)
            if d:
                break
        self.cols, self.d = list(cols), d
        if r == 1:
            adj = [[1]]
        else:
            adj = [[(-1) ** (i + j) * det([row[:i] + row[i + 1:] for k, row in enumerate(sub) if k != j]) for j in range(r)] for i in range(r)]
        self.adj = np.array(adj, dtype=np.int64)

    def mask(self, X):
        X = np.asarray(X, dtype=np.int64)
        if self.adj is None:
            return np.all(X == 0, axis=1)
        cs = X[:, self.cols] @ self.adj
        ok = np.all(cs @ self.B == self.d * X, axis=1)
        d = abs(self.d)
        while self.p and d % self.p == 0:
            d //= self.p
        return ok & np.all(cs % d == 0, axis=1)


# --- 1 ------------------------------------------------------------------------------------


def test_ac01_snf_oracle_equivalence(report):
    rng = random.Random(101)
    mats = []
    for _ in range(500):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        mats.append([[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)])
    start = time.perf_counter()
    results = [snf(a) for a in mats]
    elapsed = time.perf_counter() - start
    bad = 0
    for a, res in zip(mats, results):
        U, V = [list(r) for r in res.U], [list(r) for r in res.V]
        same = list(res.invariants) == invariants_by_elimination(a) == invariants_by_minors(a)
        exact = matmul(matmul(U, a), V) == res.diagonal_matrix()
        unimodular = abs(det(U)) == 1 and abs(det(V)) == 1
        bad += not (same and exact and unimodular)
    ok = bad == 0 and elapsed < SNF_TIME_LIMIT
    report(1, "SNF vs elimination and determinantal divisors", ok, f"500 matrices, {bad} mismatches, {elapsed:.2f}s (limit {SNF_TIME_LIMIT}s)")


# --- 2 ------------------------------------------------------------------------------------


def _independent_rows(rng, count, dim, bound):
    while True:
        rows = [[rng.randint(-bound, bound) for _ in range(dim)] for _ in range(count)]
        if len(determinantal_divisors(rows)) == count:
            return rows


def test_ac02_pure_hull_oracle(report):
    rng = random.Random(202)
    box = np.array(list(itertools.product(range(-15, 16), repeat=3)), dtype=np.int64)
    bad = skipped = done = 0
    while done < 200:
        r = rng.randint(1, 3)
        m_basis = _independent_rows(rng, r, 3, 5)
        s = rng.randint(1, r)
        T = _independent_rows(rng, s, r, 3)
        if invariants_by_minors(T)[-1] > 12:
            skipped += 1
            continue
        a_basis = matmul(T, m_basis)
        done += 1
        M = Membership(m_basis)
        A = Membership(a_basis)
        in_m = M.mask(box)
        hit = np.zeros(len(box), dtype=bool)
        for n in range(1, 13):
            hit |= A.mask(n * box)
        points = box[in_m & hit]
        # extend to a lattice: add points not yet generated
        gens = [list(map(int, v)) for v in a_basis]
        lat = canonical_lattice(0, 3, gens)
        for v in points:
            if not Membership(lat.rows).mask(v[None, :])[0]:
                lat = canonical_lattice(0, 3, list(lat.rows) + [list(map(int, v))])
        got = pure_hull(canonical_lattice(0, 3, a_basis), canonical_lattice(0, 3, m_basis))
        bad += got != lat
    report(2, "pure hull vs enumeration", bad == 0, f"200 lattices ({skipped} redrawn for n <= 12), {bad} mismatches")


# --- 3 ------------------------------------------------------------------------------------

PRIMES_97 = list(sympy.primerange(2, 98))


def test_ac03_simplicity_bicharacterization(report):
    rng = random.Random(303)
    bad = checked = 0
    for p in (0, 2, 5):
        for _ in range(200):
            r = rng.randint(1, 3)
            basis = _independent_rows(rng, r, 3, 4)
            coeffs = [rng.randint(-8, 8) for _ in range(r)]
            if not any(coeffs):
                coeffs[0] = 1
            scale = rng.choice([1, 1, 2, 3, 5, 7])
            coeffs = [scale * c for c in coeffs]
            a = [sum(c * b[j] for c, b in zip(coeffs, basis)) for j in range(3)]
            M = canonical_lattice(p, 3, basis)
            mem = Membership(basis, p)
            # a / l in M  <=>  a in l * (E_p-span)
            witness = None
            for ell in PRIMES_97:
                if ell == p:
                    continue
                if all(x % ell == 0 for x in a) and mem.mask(np.array([[x // ell for x in a]]))[0]:
                    witness = ell
                    break
            res = is_simple(a, M)
            sat = saturation_index(canonical_lattice(p, 3, [a]), M).index
            agree = res.simple == (witness is None) == (sat == 1)
            if not res.simple:
                back = [x * res.prime for x in res.root.fractions()]
                agree &= back == [Fraction(x) for x in a] and res.prime != p
                root = res.root.fractions()
                agree &= all(x.denominator == 1 for x in root) and bool(mem.mask(np.array([[int(x) for x in root]]))[0])
            bad += not agree
            checked += 1
    report(3, "is_simple vs prime-root search vs saturation index", bad == 0, f"{checked} cases over p in (0, 2, 5), {bad} disagreements")


# --- 4 ------------------------------------------------------------------------------------


def test_ac04_rationals_mod_torsion(report):
    rng = random.Random(404)
    primes = list(sympy.primerange(2, 51))
    bad = 0
    for _ in range(100):
        q = Fraction(rng.choice([1, -1]))
        for pr in rng.sample(primes, rng.randint(1, 4)):
            q *= Fraction(pr) ** rng.choice([-3, -2, -1, 1, 2, 3])
        index, vec = rationals_mod_torsion(q)
        rebuilt = Fraction(1)
        for pr, e in zip(index, vec.fractions()):
            rebuilt *= Fraction(pr) ** int(e)
        bad += rebuilt != abs(q)
    distinct = independent_mod_constants([factor(pr) for pr in primes])
    ctx = exponent_matrix([factor(Fraction(4, 9)), factor(Fraction(8, 27))])
    hull = pure_hull(ctx.lattice(), ctx.full())
    basis = [str(ctx.element(row)) for row in hull.rows]
    index = saturation_index(ctx.lattice(), ctx.full()).index
    ok = bad == 0 and distinct and basis == ["2*3^-1"] and index == 1
    report(4, "Q*/torsion exponent vectors", ok, f"100 rationals, {bad} bad reconstructions; primes independent={distinct}; hull of (4/9, 8/27) = {basis}, index {index}")


# --- 5 ------------------------------------------------------------------------------------


def _eisenstein_at_t(n):
    t, X = sympy.symbols("t X")
    poly = sympy.Poly(X ** n - t, X)
    coeffs = poly.all_coeffs()
    lead, rest = coeffs[0], coeffs[1:]
    divisible = all(sympy.rem(c, t, t) == 0 for c in rest)
    not_square = sympy.rem(rest[-1], t ** 2, t) != 0
    return sympy.rem(lead, t, t) != 0 and divisible and not_square


def test_ac05_kummer_degrees(report):
    bad = []
    for n in range(1, 13):
        got = kummer_group([factor("t")], n)
        # Eisenstein => X^n - t irreducible => degree n, and one generator => cyclic
        expected = (n,) if n > 1 else ()
        if n > 1 and not _eisenstein_at_t(n):
            bad.append(n)
        if got.invariants != expected or got.order != n:
            bad.append(n)
    report(5, "Kummer group of t vs Eisenstein", not bad, f"n = 1..12, mismatches at {bad}")


# --- 6 ------------------------------------------------------------------------------------


def _inverse(E):
    M = sympy.Matrix(E)
    return [[Fraction(int(x.p), int(x.q)) for x in row] for row in M.inv().tolist()]


def test_ac06_finite_determination(report):
    rng = random.Random(606)
    bad = levels = 0
    for _ in range(300):
        k = rng.randint(1, 3)
        E = _independent_rows(rng, k, k, 4)
        n_a = rng.randint(0, k)
        split = split_inclusion(E, n_a)
        inv = _inverse(E)
        m_oracle = reduce(lcm, (x.denominator for row in inv for x in row), 1)
        ok = split.m == m_oracle
        for d in sympy.divisors(m_oracle)[:-1]:
            # d works iff d * E^-1 is integral
            ok &= not all((d * x).denominator == 1 for row in inv for x in row)
        for n in rng.sample(range(1, 61), 4) + [m_oracle]:
            sub = realizable_twists(split.E_a, split.E_b, n)
            levels += 1
            for j in range(k - n_a):
                target = [0] * n_a + [m_oracle * int(i == j) for i in range(k - n_a)]
                chi = [sum(inv[c][i] * target[i] for i in range(k)) for c in range(k)]
                assert all(x.denominator == 1 for x in chi)
                # oracle character: E chi == target exactly
                ok &= [sum(E[i][c] * chi[c] for c in range(k)) for i in range(k)] == target
                ok &= [t % n for t in target[n_a:]] in sub
        bad += not ok
    report(6, "finite determination constant", bad == 0, f"300 matrices, {levels} levels, {bad} failures (m vs exact inverse, divisors, containment)")


# --- 7 ------------------------------------------------------------------------------------


def _to_sympy(x, syms):
    if isinstance(x, AlgElt):
        a = syms[x.field.name]
        return sum((_to_sympy(c, syms) * a ** i for i, c in enumerate(x.c)), sympy.Integer(0))
    return sympy.Rational(x.numerator, x.denominator)


def _moduli(K, syms):
    out = []
    while isinstance(K, ExtensionField):
        a = syms.setdefault(K.name, sympy.Symbol(K.name))
        out.append((sum((_to_sympy(c, syms) * a ** i for i, c in enumerate(K.modulus)), sympy.Integer(0)), a))
        K = K.base
    return out


def _sympy_residual_ok(coeffs, root, prec):
    """Independent residual: substitute t = s^R and expand with sympy."""
    syms = {}
    mods = _moduli(root.field, syms)
    for K in root.field.tower()[1:]:
        syms.setdefault(K.name, sympy.Symbol(K.name))
    R = root.series.ram
    s = sympy.Symbol("s")

    def conv(series):
        return sum((_to_sympy(c, syms) * s ** int(e * R) for e, c in series.terms), sympy.Integer(0))

    y = conv(root.series)
    f = sum((conv(c) * y ** k for k, c in enumerate(coeffs)), sympy.Integer(0))
    poly = sympy.Poly(sympy.expand(f), s)
    for (deg,), c in poly.terms():
        if deg >= prec * R:
            continue
        for m, a in mods:
            c = sympy.rem(sympy.expand(c), m, a)
        if sympy.simplify(c) != 0:
            return False
    return True


def test_ac07_newton_puiseux_residuals(report):
    rng = random.Random(707)
    polys = []
    for _ in range(50):
        deg = rng.choice([2, 3])
        coeffs = []
        for _ in range(deg):
            terms = [(e, rng.randint(-3, 3)) for e in rng.sample(range(0, 8), rng.randint(1, 3))]
            coeffs.append(PuiseuxSeries(QQ, terms, 8))
        coeffs.append(PuiseuxSeries.constant(Fraction(1)))
        polys.append(coeffs)
    start = time.perf_counter()
    results = [newton_puiseux(f, 8) for f in polys]
    elapsed = time.perf_counter() - start
    bad = 0
    for f, roots in zip(polys, results):
        ok = sum(r.count() for r in roots) == len(f) - 1
        for r in roots:
            val = evaluate_poly([c.with_field(r.field) for c in f], r.series).valuation()
            ok &= val >= 8 and _sympy_residual_ok(f, r, 8)
        bad += not ok
    exact = newton_puiseux(parse_ypoly("y^2-t"), 8)
    exact_ok = sorted(str(r.series) for r in exact) == ["-t^(1/2)", "t^(1/2)"] and all(r.exact for r in exact)
    ok = bad == 0 and exact_ok and elapsed < NEWTON_TIME_LIMIT
    report(7, "Newton-Puiseux residuals mod t^8", ok, f"50 polynomials, {bad} failures, y^2-t exact={exact_ok}, {elapsed:.2f}s (limit {NEWTON_TIME_LIMIT}s)")


# --- 8 ------------------------------------------------------------------------------------


def test_ac08_residue_homomorphism(report):
    rng = random.Random(808)
    K1 = ExtensionField(QQ, [Fraction(-2), Fraction(0), Fraction(1)])
    K = ExtensionField(K1, [K1.coerce(-3), K1.zero(), K1.one()])
    a1, a2 = K.coerce(K1.gen()), K.gen()
    tags = {"Q": Subfield(K, []), "Q(a1)": Subfield(K, [a1]), "Q(a2)": Subfield(K, [a2]), "Q(a1*a2)": Subfield(K, [a1 * a2])}
    gens = {"Q": [K.one()], "Q(a1)": [K.one(), a1], "Q(a2)": [K.one(), a2], "Q(a1*a2)": [K.one(), a1 * a2]}

    def rand_coeff(tag):
        return sum((g * Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for g in gens[tag]), K.zero())

    def rand_series(tag):
        terms = [(Fraction(rng.randint(0, 6), rng.randint(1, 3)), rand_coeff(tag)) for _ in range(rng.randint(0, 4))]
        return PuiseuxSeries(K, terms, 4)

    bad = 0
    for _ in range(200):
        tag = rng.choice(list(tags))
        a, b = rand_series(tag), rand_series(tag)
        ok = (a + b).residue() == a.residue() + b.residue()
        ok &= (a * b).residue() == a.residue() * b.residue()
        sub = tags[tag]
        ok &= (a + b).coefficients_in(sub) and (a * b).coefficients_in(sub)
        ok &= (a * b).residue() in sub and (a + b).residue() in sub
        bad += not ok
    report(8, "residue homomorphism and subfield tags", bad == 0, f"200 pairs over Q(sqrt2, sqrt3), {bad} failures")


# --- 9 ------------------------------------------------------------------------------------


def _random_poly(rng, variables, degree):
    while True:
        terms = []
        for _ in range(rng.randint(1, 3)):
            exps = [rng.randint(0, degree) for _ in variables]
            if sum(exps) <= degree:
                terms.append("*".join([str(rng.randint(1, 4) * rng.choice([1, -1]))] + [f"{v}^{e}" for v, e in zip(variables, exps) if e]))
        text = "+".join(terms).replace("+-", "-")
        if any(v in text for v in variables):
            return text


def test_ac09_root_descent_identity(report):
    rng = random.Random(909)
    scenario = build_scenario(0, ["l", "x"], [["l"], ["x"]])
    l, x = sympy.symbols("l x")
    bad = 0
    for _ in range(100):
        m = rng.randint(1, 6)
        alpha_txt = f"({_random_poly(rng, ['l', 'x'], 2)})^{rng.choice([1, -1])}*({_random_poly(rng, ['x', 'l'], 1)})"
        lam_txt = f"{rng.randint(1, 5)}*({_random_poly(rng, ['l'], 2)})^{rng.choice([1, -1])}"
        alpha, lam = factor(alpha_txt), factor(lam_txt)
        b = lam * alpha ** m
        point = specialize(scenario, ["l"], [b, alpha]).assignment
        rep = descend_root(b, alpha, m, multiplier=lam, kill=["x"], point=point)
        # independent check with sympy: pi(b) (alpha / pi(alpha))^m == b
        def sym(e):
            num, den = e.to_rational_function()
            return sympy.sympify(str(num)) / sympy.sympify(str(den))

        sb, sa = sym(b), sym(alpha)
        pb, pa = sb.subs(x, point["x"]), sa.subs(x, point["x"])
        ok = rep.verified and pb != 0 and pa != 0 and sympy.cancel(pb * (sa / pa) ** m - sb) == 0
        ok &= sympy.cancel(sym(rep.base) - pb) == 0
        bad += not ok
    report(9, "root-descent identity", bad == 0, f"100 instances with m <= 6, {bad} failures")


# --- 10 -----------------------------------------------------------------------------------


def _irreducible_pool(rng, variables):
    """Polynomials known to be irreducible, with their variable supports and degrees."""
    pool = {}
    for _ in range(12):
        k = rng.randint(1, min(3, len(variables)))
        vs = rng.sample(variables, k)
        cs = [rng.randint(1, 3) * rng.choice([1, -1]) for _ in vs]
        g = reduce(gcd, cs)
        cs = [c // g for c in cs]
        if cs[0] < 0:
            cs = [-c for c in cs]
        const = rng.randint(-3, 3)
        # primitive linear forms are irreducible
        text = "+".join(f"{c}*{v}" for c, v in zip(cs, vs)) + (f"+{const}" if const else "")
        pool[text.replace("+-", "-")] = (frozenset(vs), 1)
    for a, b in itertools.combinations(variables, 2):
        pool[f"{a}*{b}+1"] = (frozenset((a, b)), 2)
    return list(pool.items())


def _canonical_key(text):
    return sympy.Poly(sympy.sympify(text)).monic().as_expr()


def test_ac10_composite_probe(report):
    rng = random.Random(1010)
    bad = 0
    for _ in range(100):
        variables = ["x", "y", "z", "w"][: rng.randint(2, 4)]
        nblocks = rng.randint(1, 3)
        blocks = [set() for _ in range(nblocks)]
        for v in variables:
            blocks[rng.randrange(nblocks)].add(v)
        if rng.random() < 0.3:
            blocks[rng.randrange(nblocks)].add(rng.choice(variables))
        blocks = [sorted(b) for b in blocks if b]
        s = build_scenario(0, variables, blocks)
        pool = _irreducible_pool(rng, variables)
        # drop accidental duplicates up to scaling
        seen, uniq = set(), []
        for text, (sup, deg) in pool:
            key = _canonical_key(text)
            if key not in seen:
                seen.add(key)
                uniq.append((text, sup, deg))
        elems, rows = [], []
        mixed = [i for i, (_, sup, _) in enumerate(uniq) if not any(sup <= set(b) for b in blocks)]
        for _ in range(rng.randint(1, 4)):
            chosen = rng.sample(range(len(uniq)), rng.randint(1, 2))
            exps = {i: rng.choice([-1, 1, 2]) for i in chosen}
            # numerator degree at most 3
            if sum(max(e, 0) * uniq[i][2] for i, e in exps.items()) > 3:
                exps = {chosen[0]: 1}
            text = f"{rng.randint(1, 5)}*" + "*".join(f"({uniq[i][0]})^{e}" for i, e in exps.items())
            elems.append(factor(text))
            rows.append([exps.get(i, 0) for i in mixed])
        rep = locally_free_probe(s, elems)
        d = determinantal_divisors(rows) if rows and mixed else []
        rank = len(d)
        index = d[-1] if d else 1
        oracle_inv = invariants_by_minors(rows) if d else []
        ok = rep.free and rep.rank == rank
        prod = reduce(lambda u, v: u * v, rep.invariant_factors, 1)
        ok &= prod == index and sorted(rep.invariant_factors) == sorted(oracle_inv)
        ok &= rep.m == (oracle_inv[-1] if oracle_inv else 1)
        bad += not ok
    worked = locally_free_probe(build_scenario(0, ["x", "y"], [["x"], ["y"]]), [factor("x+y"), factor("x+2*y"), factor("x*y+1")])
    worked_ok = worked.rank == 3 and worked.m == 1 and all(e["simple"] for e in worked.per_element)
    report(10, "composite local-freeness probe", bad == 0 and worked_ok, f"100 scenarios, {bad} inconsistent; worked example rank {worked.rank}, m {worked.m}, all simple={worked_ok}")
