"""Reproduction suites run by ``thompson-ore verify``.

Each suite returns a :class:`SuiteResult`.  Sizes default to values that
finish in seconds; pass larger arguments for the full runs.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb

from . import census, constructions, monoid, ore
from .fields import IndeterminateField, PrimeField, Rationals, certify
from .monoid import CatalanSet, Explicit
from .ring import Polynomial, poly_mul, random_poly


@dataclass
class SuiteResult:
    name: str
    ok: bool
    detail: str = ""
    runtime: float = 0.0
    data: dict = dc_field(default_factory=dict)

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}: {self.detail} ({self.runtime:.1f}s)"


def _timed(name):
    def wrap(fn):
        def run(*args, **kw):
            t = time.perf_counter()
            try:
                ok, detail, data = fn(*args, **kw)
            except monoid.BudgetExhausted as exc:
                ok, detail, data = False, f"budget exhausted: {exc}", {}
            return SuiteResult(name, ok, detail, time.perf_counter() - t, data)
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


@_timed("counting")
def counting(n_max: int = 14):
    bad = []
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            expected = k * comb(2 * n - k - 1, n - 1) // n
            if sum(1 for _ in monoid.iter_set(CatalanSet(k, n))) != expected:
                bad.append((k, n))
    return not bad, f"|S_k,n| vs b_nk for k <= n <= {n_max}, mismatches {bad[:3]}", {}


@_timed("confluence")
def confluence(words: int = 10_000, max_len: int = 12, max_index: int = 6, seed: int = 0):
    rng = random.Random(seed)
    bad = 0
    for _ in range(words):
        w = [rng.randint(0, max_index) for _ in range(rng.randint(0, max_len))]
        a = monoid.normalize_by_strategy(w, "leftmost")
        b = monoid.normalize_by_strategy(w, "random", rng)
        if a != b or a != monoid.normalize(w):
            bad += 1
    return bad == 0, f"{words} words, {bad} mismatches", {}


@_timed("xm")
def xm(m_values=(1, 2, 3), seed: int = 1, solve: bool = True):
    notes = []
    ok = True
    for m in m_values:
        n = census.xm_threshold(m)
        rec = census.xm_census(m, n)
        good = rec.doubling_fails and rec.matches_closed_form
        if solve:
            f = PrimeField()
            rng = random.Random(seed + m)
            X = Explicit(tuple(census.x_set(m)))
            a, b = random_poly(X, f, rng), random_poly(X, f, rng)
            sols = ore.solve_pair(a, b, CatalanSet(m + 2, n), limit=1)
            good = good and bool(sols) and sols[0].verified and any(sols[0].solution)
        ok = ok and good
        notes.append(f"m={m} n={n} ratio={rec.ratio}")
    return ok, "; ".join(notes), {}


@_timed("degree-one")
def degree_one(m_max: int = 4, seeds=(1, 2, 3), rational_trials: int = 5, seed: int = 0):
    def check_field(m, f, alpha, beta):
        u, v = constructions.degree_one_solution(alpha, beta, f)
        a = Polynomial.linear(f, dict(enumerate(alpha)))
        b = Polynomial.linear(f, dict(enumerate(beta)))
        shape = (u.is_homogeneous() and v.is_homogeneous() and u.degree == m == v.degree
                 and u.max_index() <= 2 * m and v.max_index() <= 2 * m
                 and u.coefficient((0,) * m) != f.zero and v.coefficient((0,) * m) != f.zero)
        return shape and poly_mul(a, u) == poly_mul(b, v)

    rng = random.Random(seed)
    ok = True
    for m in range(1, m_max + 1):
        def sym(f, m=m):
            return check_field(m, f, [f.symbol(f"a{i}") for i in range(m + 1)],
                               [f.symbol(f"b{i}") for i in range(m + 1)])
        cert = certify(sym, seeds=seeds, degree_bound=4 * m * m + 4)
        ok = ok and cert.holds
        Q = Rationals()
        for _ in range(rational_trials):
            alpha = [Q.random_element(rng, nonzero=True) for _ in range(m + 1)]
            beta = [Q.random_element(rng, nonzero=True) for _ in range(m + 1)]
            try:
                ok = ok and check_field(m, Q, alpha, beta)
            except constructions.DegenerateCoefficientsError:
                continue
    return ok, f"m=1..{m_max}, {len(seeds)} generic seeds, {rational_trials} rational draws", {}


@_timed("basic")
def basic(trials: int = 20, seed: int = 0):
    Q = Rationals()
    rng = random.Random(seed)
    ok = True
    for _ in range(trials):
        al, be = Q.random_element(rng, True), Q.random_element(rng, True)
        a, b = constructions.basic_equation(al, be, Q)
        u, v = constructions.basic_solution(al, be, Q)
        ok = ok and poly_mul(a, u) == poly_mul(b, v)
    return ok, f"{trials} rational (alpha, beta)", {}


@_timed("family")
def family(members: int = 20, degrees=(2, 3, 4, 5), seed: int = 0):
    Q = Rationals()
    rng = random.Random(seed)
    ok = True
    for d in degrees:
        for _ in range(members):
            al, be = Q.random_element(rng, True), Q.random_element(rng, True)
            params = constructions.random_family_params(d, be, Q, rng)
            u, v = constructions.solution_family(params, al, Q)
            a, b = constructions.basic_equation(al, be, Q)
            ok = ok and bool(u) and poly_mul(a, u) == poly_mul(b, v)
            ok = ok and u == constructions.family_u(params, al, Q)
    return ok, f"{members} members per degree {list(degrees)}", {}


@_timed("s24")
def s24(n_max: int = 11, preimage_n_max: int = 10):
    notes = []
    ok = True
    for n in range(5, n_max + 1):
        rec = census.s24_census(n)
        ok = ok and rec.y_size == census.donnelly_size(n) and rec.bound_holds
    for n in range(5, preimage_n_max + 1):
        counts = census.preimage_counts(n)
        e1, e2 = census.donnelly_excluded(n)
        ok = ok and all(counts[d] == 3 for d in e1 + e2)
    thr = census.s24_threshold()
    ok = ok and thr == 45 and census.s24_ratio_bound(44) >= 2
    notes.append(f"threshold n={thr}")
    return ok, "; ".join(notes), {}


@_timed("min-n")
def min_n(n_to: int = 8, seeds=(1, 2, 3)):
    rep = census.minimal_support_search(None, None, range(5, n_to + 1), seeds)
    ok = rep.first_n is None and all(d == 0 for row in rep.dims.values() for d in row)
    return ok, f"dimension zero for n <= {n_to} under {len(seeds)} primes", {"dims": rep.dims}


def random_mixed_pair(field, rng, max_terms: int = 6, max_degree: int = 3, max_index: int = 3):
    def one():
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            d = rng.randint(0, max_degree)
            w = tuple(sorted(rng.randint(0, max_index) for _ in range(d)))
            terms[w] = field.random_element(rng, nonzero=True)
        p = Polynomial(field, terms)
        return p if p else Polynomial.one(field)
    return one(), one()


@_timed("reduce")
def reduce(pairs: int = 20, seed: int = 0):
    f = PrimeField()
    rng = random.Random(seed)
    solved = budget = 0
    ok = True
    for _ in range(pairs):
        a, b = random_mixed_pair(f, rng)
        try:
            rep = ore.ore_reduce(a, b)
        except monoid.BudgetExhausted:
            budget += 1
            continue
        u, v = rep.solution
        ok = ok and rep.verified and (bool(u) or bool(v)) and poly_mul(a, u) == poly_mul(b, v)
        solved += 1
    return ok, f"{solved} solved, {budget} budget reports", {}


@_timed("qk")
def qk(k_max: int = 5, seed: int = 0):
    Q = Rationals()
    rng = random.Random(seed)
    ok = True
    for k in range(1, k_max + 1):
        pairs = [(Q.random_element(rng, True), Q.random_element(rng, True)) for _ in range(k)]
        us = constructions.qk_system_solution(pairs, Q)
        prods = [poly_mul(Polynomial.linear(Q, {0: al, 1: be}), u) for (al, be), u in zip(pairs, us)]
        ok = ok and all(p == prods[0] for p in prods) and prods[0] == constructions.qk_product(pairs, Q)
    return ok, f"k=1..{k_max}", {}


SUITES = {
    "counting": counting,
    "confluence": confluence,
    "xm": xm,
    "degree-one": degree_one,
    "basic": basic,
    "family": family,
    "s24": s24,
    "min-n": min_n,
    "reduce": reduce,
    "qk": qk,
}
