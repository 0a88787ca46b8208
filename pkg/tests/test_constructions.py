import itertools
import random
from fractions import Fraction

import pytest

from thompson_ore import constructions as C, ore
from thompson_ore.fields import IndeterminateField, PrimeField, Rationals
from thompson_ore.ring import Polynomial, left_divide_poly, parse_poly, poly_mul, random_poly

Q = Rationals()
G = IndeterminateField(seed=11)


def lin(f, coefs):
    return Polynomial.linear(f, dict(enumerate(coefs)))


def test_basic_solution_terms_generic():
    al, be = G.symbol("alpha"), G.symbol("beta")
    m = G.mul
    u, v = C.basic_solution(al, be, G)
    assert u.terms == {
        (0, 3): be, (0, 4): m(be, be), (1, 3): G.neg(al), (1, 4): G.neg(m(al, be)),
        (3, 3): G.neg(m(al, be)), (3, 4): G.neg(m(m(al, be), be))}
    assert v.terms == {
        (0, 0): be, (0, 1): G.neg(al), (3, 3): G.neg(m(al, al)), (3, 4): G.neg(m(m(al, al), be))}


def test_basic_solution_text():
    u, v = C.basic_solution(Fraction(2), Fraction(3), Q)
    assert u == parse_poly("3*x0*x3 + 9*x0*x4 - 2*x1*x3 - 6*x1*x4 - 6*x3^2 - 18*x3*x4")
    assert v == parse_poly("3*x0^2 - 2*x0*x1 - 4*x3^2 - 12*x3*x4")


def test_normalized_basic_solution():
    be = Fraction(5)
    u, v = C.normalized_basic_solution(be, Q)
    assert u == parse_poly("x0*x3 + 5*x0*x4 - x1*x3 - 5*x1*x4 - 5*x3^2 - 25*x3*x4")
    assert v == parse_poly("x0^2 - x0*x1 - 5*x3^2 - 25*x3*x4")
    a, b = C.basic_equation(be, be, Q)
    assert poly_mul(a, u) == poly_mul(b, v)


def test_basic_rejects_zero():
    with pytest.raises(C.DegenerateCoefficientsError):
        C.basic_solution(Fraction(0), Fraction(1), Q)


def test_degree_one_m1_closed_form():
    al = [Fraction(2), Fraction(-3)]
    be = [Fraction(5), Fraction(7)]
    u, v = C.degree_one_solution(al, be, Q)
    eu, ev = lin(Q, [be[0], 0, be[1]]), lin(Q, [al[0], 0, al[1]])
    s = u.coefficient((0,)) / be[0]
    assert u == eu * s and v == ev * s


def test_degree_one_specializes_to_basic():
    al, be = Fraction(2), Fraction(-7)
    u, v = C.degree_one_solution([Fraction(1), Fraction(0), al], [Fraction(0), Fraction(1), be], Q)
    assert (u, v) == C.basic_solution(al, be, Q)


@pytest.mark.parametrize("m", range(1, 5))
def test_degree_one_shape_and_identity(m):
    rng = random.Random(m)
    F = PrimeField()
    al = [F.random_element(rng, True) for _ in range(m + 1)]
    be = [F.random_element(rng, True) for _ in range(m + 1)]
    trace = C.DegreeOneTrace()
    u, v = C.degree_one_solution(al, be, F, trace=trace)
    assert poly_mul(lin(F, al), u) == poly_mul(lin(F, be), v)
    assert u.is_homogeneous() and u.degree == m and u.max_index() <= 2 * m
    assert u.coefficient((0,) * m) and v.coefficient((0,) * m)
    assert len(trace.f) == m


def test_degree_one_degenerate():
    with pytest.raises(C.DegenerateCoefficientsError):
        C.degree_one_solution([Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)], Q)


def test_gammas_antisymmetric():
    g = C.gammas([1, 2, 3], [4, 5, 6], Q)
    assert all(g[i, j] == -g[j, i] for i in range(3) for j in range(3))


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_family_members(d):
    rng = random.Random(d)
    for _ in range(10):
        al, be = Q.random_element(rng, True), Q.random_element(rng, True)
        params = C.random_family_params(d, be, Q, rng)
        u, v = C.solution_family(params, al, Q)
        a, b = C.basic_equation(al, be, Q)
        assert u and poly_mul(a, u) == poly_mul(b, v)
        assert u == C.family_u(params, al, Q)
        assert u.is_homogeneous() and u.degree == d


def test_family_w0_one_gives_scaled_basic():
    al, be = Fraction(3), Fraction(2)
    params = C.FamilyParams(be, [Polynomial.one(Q)])
    u, v = C.solution_family(params, al, Q)
    ub, vb = C.basic_solution(al, be, Q)
    assert u == ub * (1 / be) and v == vb * (1 / be)


def test_family_validate():
    with pytest.raises(ValueError):
        C.FamilyParams(Fraction(1), [Polynomial.zero(Q), parse_poly("x0")]).validate()


def test_family_d2_nullspace_is_basic():
    al, be = Fraction(3), Fraction(-2)
    a, b = C.basic_equation(al, be, Q)
    mons = list(itertools.combinations_with_replacement(range(9), 2))
    (rep,) = ore.solve_pair(a, b, mons, limit=None)
    assert rep.basis_size == 1
    u, v = rep.solution
    ub, vb = C.basic_solution(al, be, Q)
    s = u.coefficient((0, 3)) / ub.coefficient((0, 3))
    assert u == ub * s and v == vb * s


@pytest.mark.parametrize("k", range(1, 6))
def test_qk_diagonal_reading(k):
    rng = random.Random(k)
    pairs = [(Q.random_element(rng, True), Q.random_element(rng, True)) for _ in range(k)]
    us = C.qk_system_solution(pairs, Q)
    prods = [poly_mul(Polynomial.linear(Q, {0: al, 1: be}), u) for (al, be), u in zip(pairs, us)]
    assert all(p == prods[0] for p in prods)
    assert prods[0] == C.qk_product(pairs, Q)


def test_qk_shifted_reading_not_divisible():
    pairs = [(Fraction(1), Fraction(2)), (Fraction(3), Fraction(5))]
    P = C.qk_product(pairs, Q, reading="shifted")
    divisible = [left_divide_poly(Polynomial.linear(Q, {0: al, 1: be}), P) is not None
                 for al, be in pairs]
    assert not all(divisible)


def test_qk_example_k2():
    us = C.qk_system_solution([(Fraction(1), Fraction(2)), (Fraction(3), Fraction(5))], Q)
    assert us == [parse_poly("3*x0 + 5*x2"), parse_poly("x0 + 2*x2")]
