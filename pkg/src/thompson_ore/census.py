"""Doubling censuses for finite subsets of M.

A finite ``S`` is doubling when ``|S Y| >= 2 |Y|`` for every finite
nonempty ``Y``.  Any ``Y`` with ``|S Y| < 2 |Y|`` makes the coefficient
system of ``a u = b v`` (a, b supported on S, u, v on Y) underdetermined,
so it carries a nonzero solution.
"""

from __future__ import annotations

import csv
import io
import random
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from . import monoid
from .fields import Field, PrimeField, Rationals, random_prime
from .monoid import (BudgetExhausted, CatalanSet, CatalanSetMinus, catalan,
                     catalan_triangle, enumerate_set, multiply, top_cells)
from .ore import build_system, solve_pair
from .linalg import eliminate
from .ring import Polynomial, random_poly

DEFAULT_MAX_SIZE = 3_000_000


@dataclass
class CensusRecord:
    n: int
    y_size: int
    sy_size: int
    ratio: Fraction
    closed_form: Fraction | None = None
    bound: int | None = None
    runtime: float = 0.0
    method: str = "enumeration"

    @property
    def doubling_fails(self) -> bool:
        """True when ``|SY| < 2|Y|``."""
        return self.sy_size < 2 * self.y_size

    @property
    def matches_closed_form(self) -> bool | None:
        return None if self.closed_form is None else self.closed_form == self.ratio

    @property
    def bound_holds(self) -> bool | None:
        return None if self.bound is None else self.sy_size <= self.bound

    def row(self) -> dict:
        return {"n": self.n, "Y": self.y_size, "SY": self.sy_size,
                "ratio_num": self.ratio.numerator, "ratio_den": self.ratio.denominator,
                "bound_holds": self.bound_holds if self.bound is not None else self.doubling_fails}


def records_to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, ["n", "Y", "SY", "ratio_num", "ratio_den", "bound_holds"],
                       lineterminator="\n")
    w.writeheader()
    for r in sorted(records, key=lambda r: r.n):
        w.writerow(r.row())
    return buf.getvalue()


def _materialize(d, max_size):
    if isinstance(d, (CatalanSet, CatalanSetMinus)):
        size = catalan_triangle(d.n, d.k)
        if max_size is not None and size > max_size:
            raise BudgetExhausted(f"S_{{{d.k},{d.n}}} has {size} elements, budget {max_size}")
    if isinstance(d, (monoid.Explicit, CatalanSet, CatalanSetMinus)):
        return enumerate_set(d)
    return [monoid.normalize(w) for w in d]


def doubling_ratio(S, Y, n: int | None = None, max_size: int | None = DEFAULT_MAX_SIZE) -> CensusRecord:
    """Exact ``|S Y|`` and ``|Y|`` by duplicate-free product enumeration."""
    t = time.perf_counter()
    s = _materialize(S, max_size)
    y = _materialize(Y, max_size)
    if max_size is not None and len(s) * len(y) > 8 * max_size:
        raise BudgetExhausted(f"{len(s)} x {len(y)} products exceed budget")
    sy = set()
    for a in s:
        sy.update(multiply(a, b) for b in y)
    if not y:
        raise ValueError("Y must be nonempty")
    if n is None:
        n = getattr(Y, "n", 0)
    return CensusRecord(n, len(y), len(sy), Fraction(len(sy), len(y)),
                        runtime=time.perf_counter() - t)


# -- X_m = {x_0, ..., x_m} ---------------------------------------------------


def x_set(m: int) -> list:
    return [(i,) for i in range(m + 1)]


def xm_ratio(m: int, n: int) -> Fraction:
    """``|X_m S_{m+2,n}| / |S_{m+2,n}| = (m+1)/(m+2) * (2n-m-2)/(n-m-1)``."""
    if m < 1 or n <= m + 1:
        raise monoid.ParameterError(f"need m >= 1 and n > m + 1, got m={m}, n={n}")
    return Fraction(m + 1, m + 2) * Fraction(2 * n - m - 2, n - m - 1)


def xm_threshold(m: int) -> int:
    """Least ``n`` with ``n > (m+1)(m+2)/2``, i.e. the first ratio below 2."""
    if m < 1:
        raise monoid.ParameterError(f"need m >= 1, got {m}")
    return (m + 1) * (m + 2) // 2 + 1


def xm_product_count(m: int, n: int, k: int | None = None) -> int:
    """Exact ``|X_m S_{k,n}|`` (default ``k = m + 2``) without listing the set.

    ``z`` lies in the product iff for some ``i <= m``, ``x_i`` left-divides
    ``z`` and the quotient is in ``S_{k,n}``.  Dividing by ``x_i`` removes
    the first letter ``z_t >= i + t`` (which must equal ``i + t``), so both
    tests run letter by letter: per ``i`` track searching / removed / dead
    and count weakly increasing words with a dynamic program.
    """
    k = m + 2 if k is None else k
    length = n - k + 1          # degree of z
    if length < 1 or m < 0:
        return 0
    SEARCH, FOUND, DEAD = 0, 1, 2
    # state: (last letter, statuses) -> number of prefixes
    states = {(0, (SEARCH,) * (m + 1)): 1}
    for t in range(length):
        nxt: dict = {}
        for (last, st), cnt in states.items():
            hi = max(k - 1 + t, m + t)   # nothing larger keeps any hypothesis alive
            for z in range(last, hi + 1):
                new = []
                for i, s in enumerate(st):
                    if s == SEARCH:
                        if z < i + t:
                            s = SEARCH if z <= k - 1 + t else DEAD
                        elif z == i + t:
                            s = FOUND
                        else:
                            s = DEAD
                    elif s == FOUND:
                        s = FOUND if z <= k - 2 + t else DEAD
                    new.append(s)
                if all(s == DEAD for s in new):
                    continue
                key = (z, tuple(new))
                nxt[key] = nxt.get(key, 0) + cnt
        states = nxt
    return sum(c for (_, st), c in states.items() if FOUND in st)


def xm_census(m: int, n: int, max_size: int | None = DEFAULT_MAX_SIZE,
              method: str = "auto") -> CensusRecord:
    """``|X_m S_{m+2,n}|`` by enumeration, or by :func:`xm_product_count`.

    ``method="auto"`` enumerates while ``|S_{m+2,n}|`` fits ``max_size``.
    """
    size = catalan_triangle(n, m + 2)
    if method == "auto":
        method = "enumeration" if max_size is None or size <= max_size else "count"
    if method == "enumeration":
        rec = doubling_ratio(x_set(m), CatalanSet(m + 2, n), n=n, max_size=max_size)
    elif method == "count":
        t = time.perf_counter()
        c = xm_product_count(m, n)
        rec = CensusRecord(n, size, c, Fraction(c, size), runtime=time.perf_counter() - t,
                           method="count")
    else:
        raise ValueError(f"unknown method {method!r}")
    rec.closed_form = xm_ratio(m, n)
    return rec


# -- S_{2,4} and the set with two shapes removed ------------------------------


def donnelly_Y(n: int) -> CatalanSetMinus:
    """``S_{4,n}`` without the two families with a single nontrivial tree on strand 1 or 2."""
    if n < 5:
        raise monoid.ParameterError(f"need n >= 5, got {n}")
    return CatalanSetMinus(4, n, ((1, 1, n - 3), (2, 1, n - 3)))


def donnelly_excluded(n: int) -> tuple:
    """The two excluded families as lists of monomials."""
    base = enumerate_set(CatalanSet(1, n - 3))
    return [monoid.shift(w, 1) for w in base], [monoid.shift(w, 2) for w in base]


def donnelly_size(n: int) -> int:
    return catalan_triangle(n, 4) - 2 * catalan(n - 4)


def s24_bound(n: int) -> int:
    """Upper bound ``b_{n,2} - 6 c_{n-4}`` for ``|S_{2,4} Y|``."""
    return catalan_triangle(n, 2) - 6 * catalan(n - 4)


def s24_ratio_bound(n: int) -> Fraction:
    return Fraction(s24_bound(n), donnelly_size(n))


def s24_cubic(n: int) -> Fraction:
    """``(29n^3 - 231n^2 + 562n - 420) / (3 (5n^3 - 47n^2 + 142n - 140))``."""
    return Fraction(29 * n**3 - 231 * n**2 + 562 * n - 420,
                    3 * (5 * n**3 - 47 * n**2 + 142 * n - 140))


def s24_threshold(n_max: int = 1000) -> int:
    """Least ``n`` from which the ratio bound stays below 2 up to ``n_max``."""
    last_bad = None
    for n in range(5, n_max + 1):
        if s24_ratio_bound(n) >= 2:
            last_bad = n
    return (last_bad or 4) + 1


def s24_census(n: int, max_size: int | None = DEFAULT_MAX_SIZE) -> CensusRecord:
    """Enumerate ``S_{2,4} Y`` for the reduced ``Y`` and compare with the bound."""
    rec = doubling_ratio(CatalanSet(2, 4), donnelly_Y(n), n=n, max_size=max_size)
    rec.bound = s24_bound(n)
    rec.closed_form = s24_ratio_bound(n)
    return rec


# -- simple diagrams ---------------------------------------------------------


def remove_top(w, i: int):
    q = monoid.generator_left_quotient(i, w)
    if q is None:
        raise ValueError(f"x{i} is not a top cell of {monoid.format_monomial(w)}")
    return q


def is_simple(w) -> bool:
    return len(top_cells(w)) == 1


def is_2simple(w) -> bool:
    tops = top_cells(w)
    return len(tops) == 1 and is_simple(remove_top(w, tops[0]))


def double_removal(w):
    """Result of removing the (unique) top cell twice from a 2-simple ``w``."""
    (i,) = top_cells(w)
    c = remove_top(w, i)
    (j,) = top_cells(c)
    return remove_top(c, j)


def preimage_counts(n: int) -> Counter:
    """For each ``D``, the number of 2-simple ``w`` in ``S_{2,n}`` with double removal ``D``."""
    out = Counter()
    for w in enumerate_set(CatalanSet(2, n)):
        if is_2simple(w):
            out[double_removal(w)] += 1
    return out


def count_2simple_preimages(D, n: int, counts: Counter | None = None) -> int:
    counts = preimage_counts(n) if counts is None else counts
    return counts.get(tuple(D), 0)


# -- solver search -----------------------------------------------------------


@dataclass
class SearchReport:
    dims: dict            # n -> list of nullspace dimensions, one per seed
    primes: list
    first_n: int | None
    disagreements: list
    solution: object = None

    def table(self) -> str:
        lines = ["n\t" + "\t".join(f"seed{t}" for t in range(len(self.primes)))]
        for n in sorted(self.dims):
            lines.append(f"{n}\t" + "\t".join(str(d) for d in self.dims[n]))
        return "\n".join(lines)


def _field_for_seed(seed: int, base: Field | None) -> Field:
    if isinstance(base, PrimeField):
        return base
    return PrimeField(random_prime(random.Random(seed)))


def _reduce_into(p: Polynomial, field: Field) -> Polynomial:
    if p.field == field:
        return p
    if isinstance(p.field, Rationals):
        return Polynomial(field, {w: field.convert(c) for w, c in p.terms.items()})
    raise ValueError(f"cannot move coefficients from {p.field.descriptor()} to {field.descriptor()}")


def minimal_support_search(a: Polynomial | None, b: Polynomial | None, n_range, seeds,
                           k: int = 4, max_columns: int | None = 200_000,
                           solve_first: bool = True) -> SearchReport:
    """Nullspace dimension of ``a u = b v`` on ``S_{k,n}`` for each ``n`` and seed.

    With ``a``/``b`` None, each seed draws random nonzero coefficients on
    ``S_{2,4}`` over its own random 31-bit prime.  Rational inputs are
    reduced modulo each seed's prime.  A zero dimension mod p implies zero
    dimension over Q (rank cannot grow under reduction), so only positive
    dimensions carry a bad-prime caveat; those are re-checked across seeds.
    """
    fields = []
    pairs = []
    for s in seeds:
        base = a.field if a is not None else None
        f = _field_for_seed(s, base)
        fields.append(f)
        if a is None:
            rng = random.Random(s)
            pairs.append((random_poly(CatalanSet(2, 4), f, rng),
                          random_poly(CatalanSet(2, 4), f, rng)))
        else:
            pairs.append((_reduce_into(a, f), _reduce_into(b, f)))
    dims: dict = {}
    first = None
    disagreements = []
    sol = None
    for n in n_range:
        Y = CatalanSet(k, n)
        row = []
        for (pa, pb) in pairs:
            system = build_system([[pa, -pb]], [Y, Y], max_columns=max_columns)
            row.append(system.matrix.ncols - eliminate(system.matrix).rank)
        dims[n] = row
        if len(set(x > 0 for x in row)) > 1:
            disagreements.append(n)
        if first is None and all(x > 0 for x in row):
            first = n
            if solve_first:
                pa, pb = pairs[0]
                sols = solve_pair(pa, pb, Y, limit=1, max_columns=max_columns)
                sol = sols[0] if sols else None
            break
    primes = [getattr(f, "p", None) for f in fields]
    return SearchReport(dims, primes, first, disagreements, sol)
