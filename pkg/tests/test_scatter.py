import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from coverhecke.cover import make_cover
from coverhecke.exact import Cyclo
from coverhecke.scatter import (ChiPoint, PoleError, ScatterMatrix, cocycle_check,
                                functional_equation_check, random_root_of_unity_chi,
                                random_unitary_chi, rank_one_matrix, reduced_words,
                                scattering_matrix, support_check, tau)

RANK_ONE = [(1, 1, 5), (2, 1, 5), (3, 1, 7), (4, 1, 5), (6, 1, 7),
            (2, -1, 5), (3, -1, 7), (4, -1, 5), (6, -1, 7), (12, -1, 13)]


@pytest.mark.parametrize("x", [0.3 + 0.4j, -0.6 + 0.8j, 2.0 + 0j])
def test_linear_cover_is_classical(x):
    # n = 1: tau is the scalar (x - 1/q) / (1 - x)
    c = make_cover("A", 1, 1)
    M = rank_one_matrix(c, 0, ChiPoint(c, 5, [x]))
    assert M.entries[0][0] == pytest.approx((x - 1 / 5) / (1 - x))


def test_linear_cover_exact():
    c = make_cover("A", 1, 1)
    z = Cyclo.root(7, 2)
    M = rank_one_matrix(c, 0, ChiPoint(c, 5, [(7, 2)]))
    assert M.entries[0][0] == (z - Cyclo.rational(1) / 5) / (1 - z)


def test_pole():
    c = make_cover("A", 1, 1)
    with pytest.raises(PoleError):
        rank_one_matrix(c, 0, ChiPoint(c, 5, [(1, 0)]))


def _off_pole(make, c, q, rng):
    while True:
        chi = make(c, q, rng)
        try:
            rank_one_matrix(c, 0, chi)
            return chi
        except PoleError:
            continue


@pytest.mark.parametrize("n,Q,q", RANK_ONE)
@pytest.mark.parametrize("zstar", [None, "-rho"])
def test_rank_one_support_and_functional_equation(n, Q, q, zstar):
    c = make_cover("A", 1, n, Q=Q)
    rng = random.Random(n * 31 + q)
    for make in (random_unitary_chi, random_root_of_unity_chi):
        chi = _off_pole(make, c, q, rng)
        assert support_check(c, chi, zstar)["status"] == "pass"
        assert functional_equation_check(c, chi, zstar)["status"] == "pass"


@settings(max_examples=25)
@given(st.sampled_from(RANK_ONE), st.floats(0.05, 3.0), st.floats(-3.1, 3.1))
def test_functional_equation_off_unit_circle(case, r, theta):
    import cmath
    n, Q, q = case
    c = make_cover("A", 1, n, Q=Q)
    val = r * cmath.exp(1j * theta)
    chi = ChiPoint(c, q, [val] * c.Y_Qn_basis.shape[1])
    try:
        rep = functional_equation_check(c, chi, None)
    except PoleError:
        return
    assert rep["status"] == "pass"


def test_reduced_words_of_longest():
    c = make_cover("A", 2, 2)
    W = c.datum.weyl_group
    words = reduced_words(c, W.index(W.longest))
    assert sorted(map(tuple, words)) == [(0, 1, 0), (1, 0, 1)]


@pytest.mark.parametrize("t,n,q", [("A", 2, 5), ("B", 2, 5), ("C", 2, 3), ("G", 2, 3)])
def test_cocycle_small(t, n, q):
    c = make_cover(t, 2, n)
    rep = cocycle_check(c, q, samples=4, roots_of_unity=2, seed=1)
    assert rep["status"] == "pass" and rep["block_diagonal"]


def test_words_agree_exactly():
    c = make_cover("A", 2, 3)
    chi = random_root_of_unity_chi(c, 7, random.Random(5))
    for i in range(2):
        rank_one_matrix(c, i, chi)  # off the poles for this seed
    a = scattering_matrix(c, [0, 1, 0], chi)
    b = scattering_matrix(c, [1, 0, 1], chi)
    assert a.close(b)


def test_tau_entry_matches_matrix():
    c = make_cover("A", 1, 4, Q=-1)
    chi = random_unitary_chi(c, 5, random.Random(0))
    M = rank_one_matrix(c, 0, chi)
    for i, r in enumerate(M.reps):
        for j, s in enumerate(M.reps):
            assert tau(c, 0, chi, None, r, s) == pytest.approx(M.entries[i][j])


def test_serialisation():
    c = make_cover("A", 1, 4, Q=-1)
    M = rank_one_matrix(c, 0, _off_pole(random_root_of_unity_chi, c, 5, random.Random(2)))
    data = json.loads(json.dumps(M.to_json()))
    cyclo_entries = [x for row in data["entries"] for x in row if isinstance(x, dict)]
    assert cyclo_entries and all(set(x) == {"N", "coeffs"} for x in cyclo_entries)
    csv = M.to_csv().splitlines()
    assert csv[0] == "row,col,re,im" and len(csv) == 1 + len(M.reps) ** 2
    ident = ScatterMatrix.identity(M.reps, M.backend)
    assert (ident @ M).close(M)
