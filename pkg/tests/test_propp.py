import random

import pytest
from hypothesis import given, settings, strategies as st

from coverhecke.cover import make_cover
from coverhecke.propp import (ProPGroup, ProPHecke, check_associativity,
                              check_basic_relations, check_bernstein_triangular,
                              check_idempotent_support, check_invertibility,
                              check_iwahori_projection, check_quadratic,
                              check_theta_scalars, propp_checks, propp_mul,
                              propp_theta, verify_br1)
from coverhecke.rootdata import ResourceError

SMALL = [(3, 2), (5, 2), (5, 4), (7, 3)]


@pytest.fixture(scope="module", params=SMALL, ids=lambda p: f"q{p[0]}n{p[1]}")
def algebra(request):
    q, n = request.param
    return ProPHecke(make_cover("A", 1, n, Q=-1), q)


@st.composite
def group_elements(draw, G):
    k = draw(st.integers(0, G.n - 1))
    v = draw(st.integers(-3, 3))
    l = draw(st.integers(0, G.m - 1))
    w = draw(st.integers(0, 1))
    return G.element(k, ((v,), (l,)), w)


@pytest.mark.parametrize("q,n", SMALL)
def test_group_axioms(q, n):
    G = ProPGroup(make_cover("A", 1, n, Q=-1), q)

    @settings(max_examples=40)
    @given(group_elements(G), group_elements(G), group_elements(G))
    def check(a, b, c):
        assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
        assert G.mul(a, G.inverse(a)) == G.identity()
        assert G.mul(G.identity(), a) == a

    check()


@pytest.mark.parametrize("q,n", SMALL)
def test_tits_lift_squares_to_minus_one(q, n):
    G = ProPGroup(make_cover("A", 1, n, Q=-1), q)
    s = G.element(0, None, 1)
    sq = G.mul(s, s)
    # h_alpha(-1) = alpha^vee(-1): zero valuation, unit exponent (q - 1) / 2
    assert sq[3] == 0 and sq[1] == (0,)
    assert sq[2] == ((q - 1) // 2 % G.m,)


def test_length_of_translations():
    G = ProPGroup(make_cover("A", 1, 2, Q=-1), 5)
    # n_alpha = 2, so s_y for y = k * 2 alpha^vee ... length grows linearly in |y|
    lengths = [G.length(G.s_y((2 * k,))) for k in range(0, 4)]
    assert lengths == sorted(lengths)
    assert lengths[0] == 0


def test_quadratic(algebra):
    assert all(r["status"] == "pass" for r in check_quadratic(algebra))


def test_basic_relations(algebra):
    assert check_basic_relations(algebra)["status"] == "pass"


def test_idempotent_support(algebra):
    assert check_idempotent_support(algebra)["status"] == "pass"


def test_invertibility_and_scalars(algebra):
    assert check_invertibility(algebra)["status"] == "pass"
    assert check_theta_scalars(algebra)["status"] == "pass"


def test_bernstein_triangular(algebra):
    assert check_bernstein_triangular(algebra)["status"] == "pass"


def test_iwahori_projection(algebra):
    assert check_iwahori_projection(algebra)["status"] == "pass"


def test_associativity_small(algebra):
    assert check_associativity(algebra, triples=40, seed=3)["status"] == "pass"


def test_br1(algebra):
    na = algebra.cover.n_simple[0]
    assert verify_br1(algebra, (na,))["status"] == "pass"
    assert verify_br1(algebra, (1,))["status"] == "pass"


def test_propp_checks_report_set():
    reps = propp_checks(3, 2, triples=20)
    names = [r["relation"] for r in reps]
    assert len(reps) == 11
    assert names.count("BR1") == 2
    assert all(r["status"] == "pass" for r in reps)


def test_resource_bounds():
    with pytest.raises(ResourceError):
        propp_checks(9, 4)
    with pytest.raises(ResourceError):
        propp_checks(5, 2, rank=2)


def test_theta_of_zero_is_identity(algebra):
    one = algebra.one()
    assert propp_theta(algebra, (0,)) == one
    t = algebra.T(algebra.G.torus_unit((1,)))
    assert propp_mul(one, t) == t == propp_mul(t, one)
