"""Linear equations over K[M] reduced to linear algebra over K.

Each unknown ``u_j`` is written as a combination of a finite support set
with unknown field coefficients.  Substituting into ``sum_j a_ij u_j = 0``
and collecting the coefficient of every product monomial gives an ordinary
sparse linear system whose kernel is exactly the space of solutions
supported on the chosen sets.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from . import monoid
from .fields import Field, FieldMismatchError
from .linalg import SparseMatrix, eliminate
from .monoid import BudgetExhausted, CatalanSet, multiply
from .ring import (Polynomial, format_poly, homogeneous_components, poly_mul,
                   poly_to_json, width)

log = logging.getLogger(__name__)


class ZeroCoefficientError(ValueError):
    """An Ore equation with a zero coefficient (trivially solvable)."""


@dataclass
class OreSystem:
    coeffs: list              # m x n Polynomials
    supports: list            # n set descriptors (or explicit lists)
    columns: list             # (unknown j, monomial y) per column
    row_index: dict           # (equation i, monomial w) -> row
    matrix: SparseMatrix

    @property
    def field(self) -> Field:
        return self.matrix.field

    def vector_to_solution(self, x: dict) -> list:
        n = len(self.supports)
        f = self.field
        terms = [dict() for _ in range(n)]
        for col, val in x.items():
            j, y = self.columns[col]
            terms[j][y] = val
        return [Polynomial(f, t) for t in terms]


@dataclass
class SolutionReport:
    solution: list
    field: str
    supports: list
    verified: bool
    residual: list
    basis_size: int | None = None
    seeds: list = dc_field(default_factory=list)
    provenance: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "field": self.field,
            "seeds": self.seeds,
            "supports": self.supports,
            "verified": self.verified,
            "residual_zero": all(not r for r in self.residual),
            "basis_size": self.basis_size,
            "provenance": self.provenance,
            "solution": [poly_to_json(p) for p in self.solution],
        }

    def __str__(self):
        names = [f"u{j}" for j in range(len(self.solution))]
        lines = [f"{n} = {format_poly(p)}" for n, p in zip(names, self.solution)]
        lines.append(f"verified: {self.verified}")
        return "\n".join(lines)


def _describe(support) -> str:
    if isinstance(support, (monoid.Explicit, monoid.CatalanSet, monoid.CatalanSetMinus)):
        return monoid.format_set_descriptor(support)
    return ",".join(monoid.format_monomial(w) for w in support)


def _support_monomials(support) -> list:
    if isinstance(support, (monoid.Explicit, monoid.CatalanSet, monoid.CatalanSetMinus)):
        return monoid.enumerate_set(support)
    return sorted({monoid.normalize(w) for w in support})


def _field_of(coeffs) -> Field:
    fields = {p.field for row in coeffs for p in row}
    if len(fields) != 1:
        raise FieldMismatchError(f"coefficients live in {len(fields)} different fields")
    return fields.pop()


def build_system(coeffs: Sequence[Sequence[Polynomial]], supports: Sequence,
                 max_columns: int | None = None) -> OreSystem:
    """Assemble the coefficient-collection system for ``coeffs * (u_j) = 0``.

    ``supports[j]`` is a set descriptor or an iterable of monomials for
    unknown ``j``.  Rows are ``(i, w)`` for every monomial ``w`` reachable
    in equation ``i``.
    """
    coeffs = [list(row) for row in coeffs]
    if not coeffs or not coeffs[0]:
        raise ValueError("need at least one equation and one unknown")
    n = len(coeffs[0])
    if any(len(row) != n for row in coeffs):
        raise ValueError("ragged coefficient matrix")
    if len(supports) != n:
        raise ValueError(f"{n} unknowns but {len(supports)} supports")
    f = _field_of(coeffs)
    supp = [_support_monomials(s) for s in supports]
    for j, s in enumerate(supp):
        if not s:
            raise ValueError(f"empty support for unknown {j}")
    ncols = sum(len(s) for s in supp)
    if max_columns is not None and ncols > max_columns:
        raise BudgetExhausted(f"system needs {ncols} columns, budget is {max_columns}")
    columns = [(j, y) for j, s in enumerate(supp) for y in s]
    offsets = [0]
    for s in supp[:-1]:
        offsets.append(offsets[-1] + len(s))
    row_index: dict = {}
    rows: list = []
    add = f.add
    zero = f.zero
    for i, row in enumerate(coeffs):
        for j, a in enumerate(row):
            terms = list(a.terms.items())
            for t, y in enumerate(supp[j]):
                col = offsets[j] + t
                for w, c in terms:
                    key = (i, multiply(w, y))
                    r = row_index.get(key)
                    if r is None:
                        r = row_index[key] = len(rows)
                        rows.append({})
                    rr = rows[r]
                    rr[col] = add(rr[col], c) if col in rr else c
    for rr in rows:
        for c in [c for c, v in rr.items() if v == zero]:
            del rr[c]
    M = SparseMatrix(len(rows), ncols, f, rows)
    return OreSystem(coeffs, list(supports), columns, row_index, M)


def verify_solution(coeffs: Sequence[Sequence[Polynomial]], solution: Sequence[Polynomial]):
    """Substitute exactly; returns ``(ok, residuals)`` with one residual per equation."""
    residuals = []
    for row in coeffs:
        if len(row) != len(solution):
            raise ValueError("solution length does not match unknowns")
        f = row[0].field
        r = Polynomial.zero(f)
        for a, u in zip(row, solution):
            r = r + poly_mul(a, u)
        residuals.append(r)
    return all(not r for r in residuals), residuals


def _report(coeffs, sol, supports, basis_size=None, **prov) -> SolutionReport:
    ok, res = verify_solution(coeffs, sol)
    descr = [_describe(s) for s in supports] if supports is not None else []
    return SolutionReport(sol, sol[0].field.descriptor(), descr,
                          ok, res, basis_size, provenance=prov)


def solve_system_basis(coeffs, supports, limit: int | None = None,
                       max_columns: int | None = None) -> list:
    system = build_system(coeffs, supports, max_columns=max_columns)
    ech = eliminate(system.matrix)
    free = ech.free_columns()
    dim = len(free)
    if limit is not None:
        free = free[:limit]
    one = system.field.one
    out = []
    for j in free:
        x = ech.back_substitute({j: one})
        sol = system.vector_to_solution(x)
        out.append(_report(coeffs, sol, supports, basis_size=dim))
    return out


def nullspace_dimension(coeffs, supports, max_columns: int | None = None) -> int:
    system = build_system(coeffs, supports, max_columns=max_columns)
    return system.matrix.ncols - eliminate(system.matrix).rank


FULL_SOLVE_COLUMNS = 300_000


def solve_pair(a: Polynomial, b: Polynomial, support, support_v=None,
               limit: int | None = None, max_columns: int | None = None,
               strategy: str = "auto") -> list:
    """Basis of all ``(u, v)`` on the given support with ``a u = b v``.

    ``support_v`` defaults to ``support``.  Every report is verified by
    direct substitution.

    ``strategy="descent"`` (chosen by ``"auto"`` for a Catalan support with
    more than ``FULL_SOLVE_COLUMNS`` columns) solves on ``S_{k,n'}`` for
    ``n' = k, k+1, ...`` and lifts the first solution by ``x_0^{n-n'}`` on
    the right, which maps ``S_{k,n'}`` into ``S_{k,n}``.  The result is then
    one solution, not a basis, and ``basis_size`` is None.
    """
    if not a or not b:
        raise ZeroCoefficientError("solve_pair needs nonzero a and b")
    coeffs = [[a, -b]]
    supports = [support, support if support_v is None else support_v]
    if strategy == "auto":
        big = (isinstance(support, CatalanSet) and support_v in (None, support)
               and 2 * monoid.catalan_triangle(support.n, support.k) > FULL_SOLVE_COLUMNS)
        strategy = "descent" if big else "full"
    if strategy == "full":
        return solve_system_basis(coeffs, supports, limit=limit, max_columns=max_columns)
    if strategy != "descent":
        raise ValueError(f"unknown strategy {strategy!r}")
    if not isinstance(support, CatalanSet) or support_v not in (None, support):
        raise ValueError("descent needs a single Catalan support")
    cap = FULL_SOLVE_COLUMNS if max_columns is None else max_columns
    k, n = support.k, support.n
    for m in range(k, n + 1):
        sub = CatalanSet(k, m)
        sols = solve_system_basis(coeffs, [sub, sub], limit=1, max_columns=cap)
        if sols:
            lift = Polynomial.monomial(a.field, (0,) * (n - m))
            u, v = (poly_mul(p, lift) for p in sols[0].solution)
            rep = _report(coeffs, [u, v], supports, strategy="descent",
                          solved_on=monoid.format_set_descriptor(sub), lift_degree=n - m)
            return [rep]
    return []


def solve_linear_system(coeffs, supports, max_columns: int | None = None) -> SolutionReport | None:
    """A verified nonzero solution supported on ``supports``, or None."""
    sols = solve_system_basis(coeffs, supports, limit=1, max_columns=max_columns)
    return sols[0] if sols else None


def chain_system(lins: Sequence[Polynomial]) -> list:
    """Coefficients for ``l_1 u_1 = l_2 u_2 = ... = l_k u_k`` as k-1 equations."""
    k = len(lins)
    f = lins[0].field
    zero = Polynomial.zero(f)
    rows = []
    for i in range(k - 1):
        row = [zero] * k
        row[i] = lins[i]
        row[i + 1] = -lins[i + 1]
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# reduction to homogeneous pairs


@dataclass
class ReduceBudget:
    """Limits for the homogeneous subproblem search.

    ``max_extra_degree`` bounds the solution degree above the minimum,
    ``max_columns`` bounds the linear system size, ``max_depth`` the
    width recursion.
    """
    max_extra_degree: int = 6
    max_columns: int = 6000
    max_depth: int = 64


def support_schedule(a: Polynomial, b: Polynomial, budget: ReduceBudget):
    """Yield ``S_{k,n}`` supports for a homogeneous equal-degree pair.

    ``k`` is the bottom width of the smallest Catalan set holding both
    supports, and ``n`` climbs from ``k``.
    """
    d = a.degree
    top = max(monoid.top_width(w) for w in list(a.terms) + list(b.terms))
    k = top + d
    for n in range(k, k + budget.max_extra_degree + 1):
        yield CatalanSet(k, n)


def monomial_side_solution(a: Polynomial, b: Polynomial) -> tuple:
    """Exact ``(u, v)`` with ``a u = b v`` when ``a`` has a single term.

    With ``a = alpha w``, each term ``m`` of ``b`` has a complement ``c``
    with ``m c`` in ``w M``; any common right multiple ``t`` of these
    complements puts every ``m t`` in ``w M``, so ``v = t`` works.
    """
    if len(a) != 1 or not b:
        raise ValueError("a must be a single term and b nonzero")
    f = a.field
    (w, alpha), = a.terms.items()
    t = ()
    for m in b.terms:
        c, _ = monoid.right_complement(m, w)
        x, _ = monoid.right_complement(t, c)
        t = multiply(t, x)
    ainv = f.inv(alpha)
    u = {}
    for m, beta in b.terms.items():
        q = monoid.left_quotient(w, multiply(m, t))
        u[q] = f.add(u.get(q, f.zero), f.mul(beta, ainv))
    return Polynomial(f, u), Polynomial.monomial(f, t)


def left_monomial_factor(a: Polynomial) -> tuple:
    """Split ``a = g a'`` with ``g`` a common left monomial divisor of all terms."""
    g = []
    terms = dict(a.terms)
    while terms and all(terms):
        common = set(monoid.top_cells(next(iter(terms))))
        for w in terms:
            common &= set(monoid.top_cells(w))
            if not common:
                break
        if not common:
            break
        i = min(common)
        g.append(i)
        terms = {monoid.generator_left_quotient(i, w): c for w, c in terms.items()}
    return monoid.normalize(g), Polynomial(a.field, terms)


def _through_factor(a: Polynomial, b: Polynomial, solve) -> tuple | None:
    """Use ``a = g a'``: ``g s = b t`` and ``a' u = s r`` give ``a u = b (t r)``."""
    g, rest = left_monomial_factor(a)
    if not g:
        return None
    f = a.field
    s, t = monomial_side_solution(Polynomial.monomial(f, g), b)
    u, r = solve(rest, s)
    return u, poly_mul(t, r)


def _scalar_ratio(a: Polynomial, b: Polynomial):
    """``c`` with ``a = c b``, or None."""
    if len(a) != len(b) or a.terms.keys() != b.terms.keys():
        return None
    f = a.field
    w = next(iter(b.terms))
    c = f.div(a.terms[w], b.terms[w])
    return c if all(a.terms[m] == f.mul(c, b.terms[m]) for m in b.terms) else None


def _degree_one(a: Polynomial, b: Polynomial):
    """Explicit solution for two linear forms, or None if degenerate."""
    from .constructions import DegenerateCoefficientsError, degree_one_solution
    f = a.field
    m = max(a.max_index(), b.max_index())
    alpha = [a.coefficient((i,)) for i in range(m + 1)]
    beta = [b.coefficient((i,)) for i in range(m + 1)]
    try:
        return degree_one_solution(alpha, beta, f)
    except (DegenerateCoefficientsError, ZeroDivisionError):
        return None


def solve_homogeneous_pair(a: Polynomial, b: Polynomial,
                           budget: ReduceBudget | None = None) -> tuple:
    """Nonzero homogeneous ``(u, v)`` with ``a u = b v`` for homogeneous a, b.

    If the degrees differ the lower one is padded on the right by a power
    of ``x_0``.  Raises :class:`BudgetExhausted` if no support in the
    schedule carries a solution.
    """
    budget = budget or ReduceBudget()
    if not a or not b:
        raise ZeroCoefficientError("homogeneous pair with a zero side")
    if not (a.is_homogeneous() and b.is_homogeneous()):
        raise ValueError("solve_homogeneous_pair needs homogeneous inputs")
    f = a.field
    if len(a) == 1:
        return monomial_side_solution(a, b)
    if len(b) == 1:
        v, u = monomial_side_solution(b, a)
        return u, v
    def again(x, y):
        return solve_homogeneous_pair(x, y, budget)
    for x, y, swap in ((a, b, False), (b, a, True)):
        sol = _through_factor(x, y, again)
        if sol is not None:
            return sol[::-1] if swap else sol
    if a.degree == b.degree == 1:
        sol = _degree_one(a, b)
        if sol is not None:
            return sol
    da, db = a.degree, b.degree
    pad_a = Polynomial.monomial(f, (0,) * max(0, db - da))
    pad_b = Polynomial.monomial(f, (0,) * max(0, da - db))
    a2, b2 = poly_mul(a, pad_a), poly_mul(b, pad_b)
    tried = []
    for Y in support_schedule(a2, b2, budget):
        ncols = 2 * monoid.catalan_triangle(Y.n, Y.k)
        if ncols > budget.max_columns:
            break
        sols = solve_pair(a2, b2, Y, limit=1)
        tried.append(monoid.format_set_descriptor(Y))
        if sols:
            u, v = sols[0].solution
            return poly_mul(pad_a, u), poly_mul(pad_b, v)
    raise BudgetExhausted(
        f"no solution of ({format_poly(a)}) u = ({format_poly(b)}) v on supports "
        f"{', '.join(tried) or '(none within column budget)'}")


def ore_reduce(a: Polynomial, b: Polynomial, budget: ReduceBudget | None = None,
               homogenize: bool = False) -> SolutionReport:
    """Nonzero ``(u, v)`` with ``a u = b v`` via reduction on total width.

    Minimal homogeneous components are solved first; the leftover
    ``b' = b v1 - a u1`` has smaller width sum and is handled recursively.
    With ``homogenize`` (homogeneous a, b only) the answer is replaced by the
    minimal-degree components of u and v.
    """
    budget = budget or ReduceBudget()
    if not a or not b:
        raise ZeroCoefficientError("ore_reduce needs nonzero a and b")
    a._check(b)
    u, v = _reduce(a, b, budget, 0)
    if homogenize:
        if not (a.is_homogeneous() and b.is_homogeneous()):
            raise ValueError("homogenize needs homogeneous a and b")
        u = homogeneous_components(u)[0][1]
        v = homogeneous_components(v)[0][1]
    rep = _report([[a, -b]], [u, v], None, method="width-reduction")
    if not rep.verified or not u or not v:
        raise AssertionError("width reduction produced an invalid solution")
    return rep


def _reduce(a: Polynomial, b: Polynomial, budget: ReduceBudget, depth: int) -> tuple:
    if depth > budget.max_depth:
        raise BudgetExhausted(f"width recursion deeper than {budget.max_depth}")
    c = _scalar_ratio(a, b)
    if c is not None:
        # a = c b  =>  a * 1 = b * c
        return Polynomial.one(a.field), Polynomial.one(a.field) * c
    if len(a) == 1:
        return monomial_side_solution(a, b)
    if len(b) == 1:
        v, u = monomial_side_solution(b, a)
        return u, v

    def again(x, y):
        return _reduce(x, y, budget, depth + 1)
    for x, y, swap in ((a, b, False), (b, a, True)):
        sol = _through_factor(x, y, again)
        if sol is not None:
            return sol[::-1] if swap else sol
    wa, wb = width(a), width(b)
    if wa + wb == 0:
        return solve_homogeneous_pair(a, b, budget)
    if wa > wb:
        v, u = _reduce(b, a, budget, depth)
        return u, v
    a1 = homogeneous_components(a)[0][1]
    b1 = homogeneous_components(b)[0][1]
    u1, v1 = solve_homogeneous_pair(a1, b1, budget)
    b_new = poly_mul(b, v1) - poly_mul(a, u1)
    if not b_new:
        return u1, v1
    if wa + width(b_new) >= wa + wb:
        raise AssertionError("width sum did not decrease")
    log.debug("width step %d: %d + %d -> %d + %d", depth, wa, wb, wa, width(b_new))
    u, v = _reduce(a, b_new, budget, depth + 1)
    # a u = (b v1 - a u1) v  =>  a (u + u1 v) = b (v1 v)
    return u + poly_mul(u1, v), poly_mul(v1, v)
