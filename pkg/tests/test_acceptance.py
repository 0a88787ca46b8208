"""Acceptance criteria, one test each.

Each criterion prints a PASS/FAIL line (collected by conftest and shown in
the pytest terminal summary, or printed directly when run as a script).
Results are re-checked with the slow reference code in ``oracles``.
"""

import itertools
import random
import sys
import time
from fractions import Fraction

import pytest

import oracles
from thompson_ore import census as cz, constructions as C, monoid as M, ore, suites
from thompson_ore.fields import PrimeField, Rationals, certify, random_prime
from thompson_ore.monoid import CatalanSet, Explicit
from thompson_ore.ring import Polynomial, poly_mul, random_poly

RESULTS = {}
Q = Rationals()


def record(num, name, ok, detail, t0):
    line = f"{'PASS' if ok else 'FAIL'} criterion {num} ({name}): {detail} [{time.perf_counter() - t0:.1f}s]"
    RESULTS[num] = line
    print(line)
    return ok


def zero_residual(a, u, b, v, p=None):
    """a u - b v == 0 recomputed with the rewriting oracle."""
    lhs = oracles.poly_mul(a.terms, u.terms)
    rhs = oracles.poly_mul(b.terms, v.terms)
    keys = set(lhs) | set(rhs)
    if p is None:
        return all(lhs.get(w, 0) == rhs.get(w, 0) for w in keys)
    return all((lhs.get(w, 0) - rhs.get(w, 0)) % p == 0 for w in keys)


def in_catalan(w, k, n):
    return len(w) == n - k and all(w[j] <= k + j - 1 for j in range(len(w)))


def lin(f, coefs):
    return Polynomial.linear(f, dict(enumerate(coefs)))


def test_criterion_1_counting():
    t0 = time.perf_counter()
    bad = [(k, n) for n in range(1, 15) for k in range(1, n + 1)
           if sum(1 for _ in M.iter_set(CatalanSet(k, n))) != oracles.catalan_triangle(n, k)]
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60
    assert record(1, "counting", ok, f"1<=k<=n<=14, mismatches {bad}, {dt:.1f}s < 60s", t0)


def test_criterion_2_confluence():
    t0 = time.perf_counter()
    rng = random.Random(2024)
    bad = 0
    for i in range(100_000):
        w = [rng.randint(0, 8) for _ in range(rng.randint(0, 12))]
        a = M.normalize_by_strategy(w, "leftmost")
        b = M.normalize_by_strategy(w, "rightmost")
        if a != b or (i % 100 == 0 and a != oracles.rewrite_normal_form(w)):
            bad += 1
    dt = time.perf_counter() - t0
    assert record(2, "confluence", bad == 0 and dt < 60,
                  f"100000 words, leftmost vs rightmost, {bad} mismatches", t0)


def test_criterion_3_xm():
    t0 = time.perf_counter()
    notes, ok = [], True
    for m in range(1, 6):
        n = (m + 1) * (m + 2) // 2 + 1
        size = oracles.catalan_triangle(n, m + 2)
        if m <= 4:
            rec = cz.doubling_ratio(cz.x_set(m), CatalanSet(m + 2, n), n=n, max_size=None)
        else:
            # 1.77e9 elements cannot be listed; exact transfer-matrix count instead
            rec = cz.xm_census(m, n, method="count")
        closed = Fraction(m + 1, m + 2) * Fraction(2 * n - m - 2, n - m - 1)
        good = rec.y_size == size and rec.sy_size < 2 * size and rec.ratio == closed
        f = PrimeField()
        rng = random.Random(100 + m)
        X = Explicit(tuple(cz.x_set(m)))
        a, b = random_poly(X, f, rng), random_poly(X, f, rng)
        sols = ore.solve_pair(a, b, CatalanSet(m + 2, n), limit=1)
        if sols:
            u, v = sols[0].solution
            good = good and sols[0].verified and bool(u) and zero_residual(a, u, b, v, f.p)
            good = good and all(in_catalan(w, m + 2, n) for w in list(u.terms) + list(v.terms))
        else:
            good = False
        ok = ok and good
        notes.append(f"m={m} n={n} |Y|={rec.y_size} |XY|={rec.sy_size} ({rec.method})")
    assert record(3, "X_m not doubling", ok, "; ".join(notes), t0)


def test_criterion_4_degree_one():
    t0 = time.perf_counter()
    ok = True
    redraws = 0
    rng = random.Random(4)
    for m in range(1, 7):
        def shape(f, u, v):
            return (u.is_homogeneous() and v.is_homogeneous() and u.degree == m == v.degree
                    and u.max_index() <= 2 * m and v.max_index() <= 2 * m
                    and u.coefficient((0,) * m) != f.zero and v.coefficient((0,) * m) != f.zero)

        def check(f):
            al = [f.symbol(f"a{i}") for i in range(m + 1)]
            be = [f.symbol(f"b{i}") for i in range(m + 1)]
            u, v = C.degree_one_solution(al, be, f)
            return shape(f, u, v) and poly_mul(lin(f, al), u) == poly_mul(lin(f, be), v)

        ok = ok and certify(check, seeds=(1, 2, 3), degree_bound=4 * m * m + 4).holds
        done = 0
        while done < 5:
            al = [Q.random_element(rng, True) for _ in range(m + 1)]
            be = [Q.random_element(rng, True) for _ in range(m + 1)]
            try:
                u, v = C.degree_one_solution(al, be, Q)
            except C.DegenerateCoefficientsError:
                # some gamma_ij vanished: not a generic specialization, draw again
                redraws += 1
                continue
            done += 1
            ok = ok and shape(Q, u, v) and zero_residual(lin(Q, al), u, lin(Q, be), v)
    assert record(4, "degree-one construction", ok, f"m=1..6, 3 evaluation seeds, 5 generic rational draws ({redraws} degenerate redrawn)", t0)


def test_criterion_5_basic():
    t0 = time.perf_counter()
    rng = random.Random(5)
    ok = True
    for _ in range(20):
        al, be = Q.random_element(rng, True), Q.random_element(rng, True)
        a, b = C.basic_equation(al, be, Q)
        u, v = C.basic_solution(al, be, Q)
        ok = ok and zero_residual(a, u, b, v)
        ok = ok and u.terms == {(0, 3): be, (0, 4): be * be, (1, 3): -al, (1, 4): -al * be,
                                (3, 3): -al * be, (3, 4): -al * be * be}
        ok = ok and v.terms == {(0, 0): be, (0, 1): -al, (3, 3): -al * al, (3, 4): -al * al * be}
    assert record(5, "basic solution", ok, "20 rational (alpha, beta), term lists match", t0)


def brute_nullspace_d2(al, be, bound=8):
    mons = list(itertools.combinations_with_replacement(range(bound + 1), 2))
    a, b = C.basic_equation(al, be, Q)
    cols = [oracles.poly_mul(a.terms, {w: 1}) for w in mons]
    cols += [{k: -c for k, c in oracles.poly_mul(b.terms, {w: 1}).items()} for w in mons]
    rows = sorted(set().union(*cols))
    matrix = [[col.get(r, 0) for col in cols] for r in rows]
    dim = len(cols) - oracles.dense_rank(matrix)
    u, v = C.basic_solution(al, be, Q)
    vec = [u.coefficient(w) for w in mons] + [v.coefficient(w) for w in mons]
    in_kernel = all(sum(Fraction(x) * y for x, y in zip(r, vec)) == 0 for r in matrix)
    return dim, in_kernel and any(vec)


def test_criterion_6_family():
    t0 = time.perf_counter()
    rng = random.Random(6)
    ok = True
    for d in range(2, 6):
        for _ in range(200):
            al, be = Q.random_element(rng, True), Q.random_element(rng, True)
            params = C.random_family_params(d, be, Q, rng)
            u, v = C.solution_family(params, al, Q)
            a, b = C.basic_equation(al, be, Q)
            ok = ok and bool(u) and u.degree == d and zero_residual(a, u, b, v)
    dim, spanned = brute_nullspace_d2(Fraction(3), Fraction(-2))
    ok = ok and dim == 1 and spanned
    assert record(6, "solution family", ok,
                  f"200 members per d=2..5; d=2 brute nullspace dim {dim}, spanned by basic: {spanned}", t0)


def test_criterion_7_s24():
    t0 = time.perf_counter()
    ok = True
    tight = []
    for n in range(5, 14):
        Y = M.enumerate_set(cz.donnelly_Y(n))
        ok = ok and len(Y) == oracles.catalan_triangle(n, 4) - 2 * oracles.catalan(n - 4)
        sy = {M.multiply(s, y) for s in M.enumerate_set(CatalanSet(2, 4)) for y in Y}
        bound = oracles.catalan_triangle(n, 2) - 6 * oracles.catalan(n - 4)
        ok = ok and len(sy) <= bound
        tight.append(len(sy) == bound)
    for n in range(5, 13):
        counts = cz.preimage_counts(n)
        e1, e2 = cz.donnelly_excluded(n)
        ok = ok and all(counts[d] == 3 for d in e1 + e2)

    def ratio(n):
        return Fraction(oracles.catalan_triangle(n, 2) - 6 * oracles.catalan(n - 4),
                        oracles.catalan_triangle(n, 4) - 2 * oracles.catalan(n - 4))

    first = next(n for n in range(5, 1000) if ratio(n) < 2)
    ok = ok and first == 45 and ratio(44) >= 2 and all(ratio(n) < 2 for n in range(45, 300))
    ok = ok and cz.s24_threshold() == 45
    assert record(7, "S_{2,4} count bound", ok,
                  f"n=5..13 sizes and bound (tight at all n: {all(tight)}), preimages n<=12, "
                  f"first ratio < 2 at n={first}", t0)


def test_criterion_8_min_n():
    t0 = time.perf_counter()
    seeds = (1, 2, 3)
    rep = cz.minimal_support_search(None, None, range(5, 11), seeds)
    ok = rep.first_n is None and all(d == 0 for row in rep.dims.values() for d in row)
    ok = ok and len(set(rep.primes)) == 3 and set(rep.dims) == set(range(5, 11))
    # independent dense rank at n = 6 for the first seed
    s = seeds[0]
    f = PrimeField(random_prime(random.Random(s)))
    rng = random.Random(s)
    a, b = random_poly(CatalanSet(2, 4), f, rng), random_poly(CatalanSet(2, 4), f, rng)
    Y = [w for w in oracles.monomials(2, 6) if in_catalan(w, 4, 6)]
    cols = [oracles.poly_mul(a.terms, {w: 1}) for w in Y]
    cols += [{k: -c for k, c in oracles.poly_mul(b.terms, {w: 1}).items()} for w in Y]
    rows = sorted(set().union(*cols))
    dense = len(cols) - oracles.dense_rank([[c.get(r, 0) for c in cols] for r in rows], f.p)
    ok = ok and dense == rep.dims[6][0] == 0
    assert record(8, "minimal n search", ok,
                  f"3 random primes, nullspace dims {rep.dims[10]} at n=10, zero for all n<=10", t0)


def test_criterion_9_reduce():
    t0 = time.perf_counter()
    f = PrimeField()
    rng = random.Random(0)
    solved = budget = 0
    ok = True
    for _ in range(100):
        a, b = suites.random_mixed_pair(f, rng, max_terms=6, max_degree=3)
        try:
            rep = ore.ore_reduce(a, b)
        except M.BudgetExhausted as exc:
            ok = ok and bool(str(exc))
            budget += 1
            continue
        u, v = rep.solution
        ok = ok and rep.verified and (bool(u) or bool(v)) and zero_residual(a, u, b, v, f.p)
        solved += 1
    assert record(9, "mixed-width reduction", ok,
                  f"{solved} verified solutions, {budget} clean budget reports, 0 residual failures", t0)


def test_criterion_10_qk():
    t0 = time.perf_counter()
    rng = random.Random(10)
    ok = True
    for k in range(1, 6):
        pairs = [(Q.random_element(rng, True), Q.random_element(rng, True)) for _ in range(k)]
        us = C.qk_system_solution(pairs, Q)
        prods = [oracles.poly_mul({(0,): al, (1,): be}, u.terms) for (al, be), u in zip(pairs, us)]
        ok = ok and all(p == prods[0] for p in prods) and bool(prods[0])
        ok = ok and prods[0] == C.qk_product(pairs, Q).terms
    assert record(10, "Q_k chain", ok, "k=1..5, all chain products identical", t0)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
