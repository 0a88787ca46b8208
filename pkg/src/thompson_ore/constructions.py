"""Explicit solutions of degree-one Ore equations.

* :func:`degree_one_solution` -- a homogeneous solution of degree ``m`` of
  ``(sum alpha_i x_i) u = (sum beta_i x_i) v`` in ``x_0 .. x_{2m}``.
* :func:`basic_solution` -- the degree-2 solution of
  ``(x_0 + alpha x_2) u = (x_1 + beta x_2) v``.
* :func:`solution_family` -- every solution of that equation, generated
  from the basic one and parameters ``w_j`` in ``K[M_j]``.
* :func:`qk_system_solution` -- a common multiple for the chain
  ``(alpha_1 x_0 + beta_1 x_1) u_1 = ... = (alpha_k x_0 + beta_k x_1) u_k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .fields import Field
from .ring import Polynomial, left_divide_poly, poly_mul, shift_poly


class DegenerateCoefficientsError(ValueError):
    pass


class ConstructionError(AssertionError):
    """A construction failed its built-in verification."""


def _lin(field: Field, coefs) -> Polynomial:
    return Polynomial.linear(field, dict(enumerate(coefs)))


def gammas(alpha: Sequence, beta: Sequence, field: Field) -> dict:
    """``gamma[i, j] = alpha_j beta_i - alpha_i beta_j``."""
    m = len(alpha) - 1
    return {(i, j): field.sub(field.mul(alpha[j], beta[i]), field.mul(alpha[i], beta[j]))
            for i in range(m + 1) for j in range(m + 1)}


@dataclass
class DegreeOneTrace:
    """Intermediate polynomials, kept so callers can inspect each step."""
    f: list = dc_field(default_factory=list)      # f_1 .. f_m
    u: list = dc_field(default_factory=list)      # u_0 .. u_{m-1}
    v: list = dc_field(default_factory=list)


def degree_one_solution(alpha: Sequence, beta: Sequence, field: Field,
                        check_generic: bool = True, trace: DegreeOneTrace | None = None):
    """Homogeneous ``(u, v)`` of degree ``m = len(alpha) - 1`` with ``a u = b v``.

    ``a = sum alpha_i x_i`` and ``b = sum beta_i x_i``.  Each intermediate
    identity ``f_k = a u_{k-1} + b v_{k-1}`` is re-checked as it is built.
    With ``check_generic`` every ``gamma_ij`` (``i != j``) must be nonzero.
    """
    if len(alpha) != len(beta) or not alpha:
        raise ValueError("alpha and beta must have the same positive length")
    alpha = [field.convert(x) if isinstance(x, int) else x for x in alpha]
    beta = [field.convert(x) if isinstance(x, int) else x for x in beta]
    m = len(alpha) - 1
    one = Polynomial.one(field)
    if m == 0:
        if alpha[0] == field.zero or beta[0] == field.zero:
            raise DegenerateCoefficientsError("alpha_0 and beta_0 must be nonzero")
        return one * beta[0], one * alpha[0]
    g = gammas(alpha, beta, field)
    if check_generic:
        bad = [(i, j) for (i, j), v in g.items() if i != j and v == field.zero]
        if bad:
            raise DegenerateCoefficientsError(f"gamma_ij vanishes for {bad[:4]}")
    a = _lin(field, alpha)
    b = _lin(field, beta)

    def low(k):   # sum_{i<k} gamma_ki x_i
        return Polynomial.linear(field, {i: g[k, i] for i in range(k)})

    def high(k):  # sum_{i>k} gamma_ki x_i
        return Polynomial.linear(field, {i: g[k, i] for i in range(k + 1, m + 1)})

    f = high(0)
    u = one * beta[0]
    v = one * (field.neg(alpha[0]))
    if trace is not None:
        trace.f.append(f)
        trace.u.append(u)
        trace.v.append(v)
    for k in range(1, m):
        sf = shift_poly(f)
        lk = low(k)
        f_next = poly_mul(high(k), sf)
        u = -poly_mul(u, lk) + sf * beta[k]
        v = -poly_mul(v, lk) - sf * alpha[k]
        if poly_mul(a, u) + poly_mul(b, v) != f_next:
            raise ConstructionError(f"step {k}: f_{k + 1} != a u_{k} + b v_{k}")
        f = f_next
        if trace is not None:
            trace.f.append(f)
            trace.u.append(u)
            trace.v.append(v)
    sigma_m = low(m)
    sf = shift_poly(f)
    u_fin = -poly_mul(u, sigma_m) + sf * beta[m]
    v_fin = poly_mul(v, sigma_m) + sf * alpha[m]
    if poly_mul(a, u_fin) != poly_mul(b, v_fin):
        raise ConstructionError("final combination does not satisfy a u = b v")
    return u_fin, v_fin


def basic_solution(alpha, beta, field: Field):
    """The degree-2 solution ``(u_0, v_0)`` of ``(x0 + alpha x2) u = (x1 + beta x2) v``."""
    if alpha == field.zero or beta == field.zero:
        raise DegenerateCoefficientsError("alpha and beta must both be nonzero")
    F = field
    ab = F.mul(alpha, beta)
    u0 = Polynomial(F, [
        ((0, 3), beta),
        ((0, 4), F.mul(beta, beta)),
        ((1, 3), F.neg(alpha)),
        ((1, 4), F.neg(ab)),
        ((3, 3), F.neg(ab)),
        ((3, 4), F.neg(F.mul(ab, beta))),
    ])
    v0 = Polynomial(F, [
        ((0, 0), beta),
        ((0, 1), F.neg(alpha)),
        ((3, 3), F.neg(F.mul(alpha, alpha))),
        ((3, 4), F.neg(F.mul(F.mul(alpha, alpha), beta))),
    ])
    return u0, v0


def basic_equation(alpha, beta, field: Field):
    """``(x0 + alpha x2, x1 + beta x2)``."""
    return (_lin(field, [field.one, field.zero, alpha]),
            _lin(field, [field.zero, field.one, beta]))


def normalized_basic_solution(beta, field: Field):
    """Basic solution for ``alpha = beta`` with the common factor ``beta`` removed."""
    u0, v0 = basic_solution(beta, beta, field)
    inv = field.inv(beta)
    return u0 * inv, v0 * inv


@dataclass
class FamilyParams:
    """Parameters ``w_0 .. w_k`` of a solution; ``w_j`` must lie in ``K[M_j]``."""
    beta: object
    w: list

    @property
    def depth(self) -> int:
        return len(self.w) - 1

    def validate(self) -> None:
        for j, wj in enumerate(self.w):
            bad = [t for t in wj.terms if t and t[0] < j]
            if bad:
                raise ValueError(f"w_{j} has a monomial with index below {j}: {bad[0]}")


def family_u(params: FamilyParams, alpha, field: Field) -> Polynomial:
    """First component in closed form.

    ``u = u_0' w_0 + sum_{j>=1} prod_{i=1}^{j} (x_i + beta x_{i+2}) phi^j(u_0) w_j``
    where ``u_0`` is the normalized basic solution for ``beta`` and
    ``u_0'`` the basic solution for ``(alpha, beta)`` divided by ``beta``.
    """
    params.validate()
    beta = params.beta
    ub, _ = basic_solution(alpha, beta, field)
    head = ub * field.inv(beta)
    u0, _ = normalized_basic_solution(beta, field)
    total = Polynomial.zero(field)
    prefix = Polynomial.one(field)
    for j, wj in enumerate(params.w):
        if j == 0:
            total = total + poly_mul(head, wj)
            continue
        prefix = poly_mul(prefix, Polynomial.linear(field, {j: field.one, j + 2: beta}))
        total = total + poly_mul(poly_mul(prefix, shift_poly(u0, j)), wj)
    return total


def solution_family(params: FamilyParams, alpha, field: Field):
    """A solution ``(u, v)`` of ``(x0 + alpha x2) u = (x1 + beta x2) v``.

    ``u`` equals :func:`family_u`; ``v`` is carried along the recursion that
    reduces parameters ``(alpha, beta)`` to ``(beta, beta)`` one degree down:

        u = u_0 W + alpha^-1 (x1 + beta x3) phi(u')
        v = v_0 W + alpha^-1 x0 phi(v') + x3 phi(u')

    with ``(u', v')`` a solution for ``(beta, beta)``.
    """
    params.validate()
    if alpha == field.zero:
        raise DegenerateCoefficientsError("alpha must be nonzero")
    if params.beta == field.zero:
        raise DegenerateCoefficientsError("beta must be nonzero")
    return _family(list(params.w), alpha, params.beta, field)


def _family(ws: list, alpha, beta, field: Field):
    zero = Polynomial.zero(field)
    if not any(ws):
        return zero, zero
    F = field
    ub, vb = basic_solution(alpha, beta, F)
    binv = F.inv(beta)
    ainv = F.inv(alpha)
    w0 = ws[0] if ws else zero
    # u' is the family for (beta, beta) with w'_j = alpha * phi^-1(w_{j+1})
    rest = [shift_poly(w, -1) * alpha for w in ws[1:]]
    up, vp = _family(rest, beta, beta, F)
    x1b3 = _lin(F, [F.zero, F.one, F.zero, beta])
    x0 = Polynomial.monomial(F, (0,))
    x3 = Polynomial.monomial(F, (3,))
    u = poly_mul(ub * binv, w0) + poly_mul(x1b3, shift_poly(up)) * ainv
    v = (poly_mul(vb * binv, w0) + poly_mul(x0, shift_poly(vp)) * ainv
         + poly_mul(x3, shift_poly(up)))
    return u, v


def qk_product(pairs: Sequence, field: Field, reading: str = "diagonal") -> Polynomial:
    """Product whose left divisors give the chain solution.

    ``reading="diagonal"``: ``prod_i (alpha_i x_0 + beta_i x_i)``, which is
    symmetric in the pairs.  ``reading="shifted"``: ``prod_i (alpha_i x_0 +
    beta_i x_{i+1})``, kept for comparison only; it is not divisible in
    general.
    """
    out = Polynomial.one(field)
    for i, (al, be) in enumerate(pairs, start=1):
        idx = i if reading == "diagonal" else i + 1
        out = poly_mul(out, Polynomial.linear(field, {0: al, idx: be}))
    return out


def qk_system_solution(pairs: Sequence, field: Field) -> list:
    """``u_1..u_k`` with every ``(alpha_i x_0 + beta_i x_1) u_i`` equal."""
    if not pairs:
        raise ValueError("need at least one pair")
    for al, be in pairs:
        if al == field.zero and be == field.zero:
            raise DegenerateCoefficientsError("zero linear factor")
    P = qk_product(pairs, field)
    out = []
    for i, (al, be) in enumerate(pairs, start=1):
        lin = Polynomial.linear(field, {0: al, 1: be})
        q = left_divide_poly(lin, P)
        if q is None:
            raise ConstructionError(f"product is not left divisible by factor {i}")
        out.append(q)
    return out


def random_family_params(degree: int, beta, field: Field, rng, max_terms: int = 3,
                         max_index: int = 6) -> FamilyParams:
    """Random parameters giving a homogeneous solution of the given degree.

    ``w_j`` is homogeneous of degree ``degree - 2 - j`` with indices in
    ``[j, j + max_index]``; at least one ``w_j`` is nonzero.
    """
    if degree < 2:
        raise ValueError("solutions have degree at least 2")
    ws = []
    for j in range(degree - 1):
        d = degree - 2 - j
        terms = {}
        for _ in range(rng.randint(0, max_terms)):
            w = tuple(sorted(rng.randint(j, j + max_index) for _ in range(d)))
            terms[w] = field.random_element(rng, nonzero=True)
        ws.append(Polynomial(field, terms))
    if not any(ws):
        ws[0] = Polynomial.monomial(field, (0,) * (degree - 2))
    return FamilyParams(beta, ws)
