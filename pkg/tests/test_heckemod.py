import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coverhecke.cover import make_cover
from coverhecke.exact import ConfigurationError
from coverhecke.heckemod import (GGModule, GGVector, IwahoriHecke, PreconditionError,
                                 bernstein_theta, compare_induced, default_window,
                                 finite_gg, hecke_mul, orbit_component, sl2_special,
                                 verify_gg_relations)
from coverhecke.orbits import enumerate_orbits

ALGEBRAS = [("A", 1, 1, 1, 5), ("A", 1, 4, -1, 5), ("A", 2, 2, 1, 5), ("B", 2, 2, 1, 5),
            ("G", 2, 1, 1, 7), ("C", 2, 3, 1, 7)]


def _alg(case):
    t, r, n, Q, q = case
    return IwahoriHecke(make_cover(t, r, n, Q=Q), q)


@pytest.mark.parametrize("case", ALGEBRAS)
def test_quadratic_relation(case):
    A = _alg(case)
    q = A.q
    for i in range(len(A.generators)):
        T = A.T_simple(i)
        assert T * T == T.scale(q - 1) + A.one().scale(q)


@pytest.mark.parametrize("case", ALGEBRAS)
def test_finite_braid_relations(case):
    A = _alg(case)
    R = A.cover.datum
    for i, j in itertools.combinations(range(R.rank), 2):
        m = {0: 2, 1: 3, 2: 4, 3: 6}[int(R.cartan[i, j] * R.cartan[j, i])]
        a = A.one()
        b = A.one()
        for k in range(m):
            a = a * A.T_simple(1 + (i if k % 2 == 0 else j))
            b = b * A.T_simple(1 + (j if k % 2 == 0 else i))
        assert a == b


def test_generic_q_quadratic():
    A = IwahoriHecke(make_cover("A", 2, 2))
    T = A.T_simple(1)
    q = A.q
    assert T * T == T.scale(q - 1) + A.one().scale(q)


@st.composite
def hecke_triple(draw):
    case = draw(st.sampled_from(ALGEBRAS[:4]))
    A = _alg(case)
    k = len(A.generators)

    def elt():
        words = draw(st.lists(st.lists(st.integers(0, k - 1), max_size=4), min_size=1, max_size=3))
        out = A.element()
        for w in words:
            e = A.one()
            for i in w:
                e = e * A.T_simple(i)
            out = out + e.scale(draw(st.integers(-3, 3)))
        return out

    return A, elt(), elt(), elt()


@settings(max_examples=30)
@given(hecke_triple())
def test_associativity(t):
    A, a, b, c = t
    assert hecke_mul(hecke_mul(a, b), c) == hecke_mul(a, hecke_mul(b, c))
    assert (a + b) * c == a * c + b * c


@pytest.mark.parametrize("case", ALGEBRAS[:4])
def test_theta_is_multiplicative(case):
    A = _alg(case)
    B = A.cover.Y_Qn_basis
    vecs = [B[:, j] for j in range(B.shape[1])]
    for x, y in itertools.product(vecs + [-v for v in vecs], repeat=2):
        assert bernstein_theta(A, x) * bernstein_theta(A, y) == bernstein_theta(A, x + y)


def test_inverse_basis():
    A = _alg(ALGEBRAS[2])
    for i in range(len(A.generators)):
        x = A.generators[i]
        assert A.T(x) * A.inverse_basis(x) == A.one()


# -- Gelfand-Graev module -----------------------------------------------------------

MODULES = [("A", 1, 2, 1, 5), ("A", 1, 3, 1, 7), ("A", 1, 6, -1, 7), ("A", 2, 2, 1, 5),
           ("A", 2, 3, 1, 7), ("B", 2, 2, 1, 5), ("C", 2, 2, 1, 5), ("G", 2, 2, 1, 5),
           ("B", 2, 4, 1, 5)]


@pytest.mark.parametrize("case", MODULES)
def test_gg_relations(case):
    t, r, n, Q, q = case
    M = GGModule(make_cover(t, r, n, Q=Q), q)
    for rep in verify_gg_relations(M):
        assert rep["status"] == "pass", rep


@pytest.mark.parametrize("case", MODULES)
def test_orbit_components(case):
    t, r, n, Q, q = case
    c = make_cover(t, r, n, Q=Q)
    M = GGModule(c, q)
    for o in enumerate_orbits(c):
        assert orbit_component(M, o)["status"] == "pass"
        if o.splitting:
            rep = compare_induced(M, o)
            assert rep["status"] == "pass", rep
            if o.free:
                assert rep["free_rank_one"]


def test_printed_convention_fails():
    # the alternative sign on the negative branch breaks the quadratic relation
    M = GGModule(make_cover("A", 1, 4, Q=-1), 5, convention="printed")
    reps = {r["relation"]: r["status"] for r in verify_gg_relations(M, relations=("quadratic",))}
    assert reps["quadratic"] == "fail"


def test_module_rejects_bad_q():
    with pytest.raises(ConfigurationError):
        GGModule(make_cover("A", 1, 4), 7)


@settings(max_examples=30)
@given(st.sampled_from(MODULES), st.lists(st.integers(-4, 4), min_size=2, max_size=2),
       st.integers(0, 1))
def test_quadratic_on_random_vectors(case, y, i):
    t, r, n, Q, q = case
    M = GGModule(make_cover(t, r, n, Q=Q), q)
    i = i % r
    e = GGVector.basis(tuple(y[:r]))
    t1 = M.T(e, i)
    assert (M.T(t1, i) - t1.scale(q - 1) - e.scale(q)).is_zero()


# -- finite GG -------------------------------------------------------------------------

@pytest.mark.parametrize("case", [("A", 1, 2, 1, 5), ("A", 1, 4, -1, 5), ("A", 2, 2, 1, 7), ("B", 2, 2, 1, 5)])
def test_finite_gg_irreducible_blocks(case):
    t, r, n, Q, q = case
    F = finite_gg(make_cover(t, r, n, Q=Q), q)
    rows = F.decomposition()
    assert sum(x["dim"] for x in rows) == sum(len(o) for o in F.orbits())
    for o in F.orbits():
        assert F.is_irreducible(o)


# -- SL_2 special element ----------------------------------------------------------------

def test_sl2_special_frozen():
    rep = sl2_special(make_cover("A", 1, 4, Q=-1), 5)
    assert rep["status"] == "pass"
    assert rep["n_star"] == 2
    assert str(rep["eigenvalue_squared"]) == "1"


@pytest.mark.parametrize("n,q", [(8, 9), (12, 13)])
def test_sl2_special_other_n(n, q):
    rep = sl2_special(make_cover("A", 1, n, Q=-1), q)
    assert rep["status"] == "pass"


def test_sl2_special_preconditions():
    with pytest.raises(PreconditionError):
        sl2_special(make_cover("A", 1, 3, Q=-1), 7)
    with pytest.raises(PreconditionError):
        sl2_special(make_cover("A", 2, 2), 5)


def test_default_window_size():
    assert len(default_window(make_cover("A", 2, 2), 4)) == 81
