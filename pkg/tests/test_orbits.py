from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coverhecke.cover import make_cover
from coverhecke.orbits import (as_coweight, delta_a_y, enumerate_orbits,
                               is_parabolic, is_splitting, is_z_persistent,
                               s_property, splitting_bruteforce, stabilizer_of,
                               twist_shifts)

COVERS = [("A", 1, n, -1) for n in (2, 3, 4, 6, 8)] + [
    ("A", 2, 2, 1), ("A", 2, 3, 1), ("A", 2, 4, 1), ("B", 2, 2, 1), ("B", 2, 4, 1),
    ("C", 2, 2, 1), ("C", 2, 4, 1), ("G", 2, 2, 1), ("G", 2, 3, 1), ("A", 3, 2, 1),
    ("B", 3, 2, 1), ("C", 3, 2, 1)]


def _twisted(c, w, y, z):
    zc = np.array(as_coweight(c, z), dtype=object)
    v = w.matrix.astype(object) @ (np.asarray(y, dtype=object) + zc) - zc
    assert all(Fraction(x).denominator == 1 for x in v)
    return np.array([int(x) for x in v], dtype=np.int64)


def bfs_orbits(c, z):
    """Independent orbit oracle: breadth-first search under simple reflections."""
    W = c.datum.weyl_group
    gens = [W.simple(i) for i in range(c.datum.rank)]
    X = c.X
    seen = {}
    out = []
    for k in range(X.order):
        if k in seen:
            continue
        comp = {k}
        stack = [k]
        seen[k] = len(out)
        while stack:
            y = X.decode(stack.pop())
            for s in gens:
                j = X.encode(_twisted(c, s, y, z))
                if j not in seen:
                    seen[j] = len(out)
                    comp.add(j)
                    stack.append(j)
        out.append(frozenset(comp))
    return sorted(out, key=min)


@pytest.mark.parametrize("t,r,n,Q", COVERS)
@pytest.mark.parametrize("z", [None, "rho"])
def test_orbits_match_bfs(t, r, n, Q, z):
    c = make_cover(t, r, n, Q=Q)
    got = sorted((frozenset(int(k) for k in o.elements) for o in enumerate_orbits(c, z)), key=min)
    assert got == bfs_orbits(c, z)


@pytest.mark.parametrize("t,r,n,Q", COVERS)
def test_orbit_stabilizer(t, r, n, Q):
    c = make_cover(t, r, n, Q=Q)
    W = c.datum.weyl_group
    for o in enumerate_orbits(c):
        assert o.size * o.stab_order == len(W.elements)
        assert o.free == (o.size == len(W.elements))
        assert o.trivial == (o.size == 1)
        stab = stabilizer_of(c, o.rep)
        assert len(stab) == o.stab_order
        for k in stab:
            assert c.X.encode(_twisted(c, W.elements[k], o.rep, None)) == c.X.encode(o.rep)


@pytest.mark.parametrize("t,r,n,Q", COVERS)
def test_splitting_two_routes(t, r, n, Q):
    c = make_cover(t, r, n, Q=Q)
    for o in enumerate_orbits(c):
        flag, witness = is_splitting(o)
        brute, _ = splitting_bruteforce(o)
        assert flag == brute
        if flag:
            y = np.asarray(witness, dtype=np.int64)
            assert c.X.encode(y) == c.X.encode(o.rep)
            W = c.datum.weyl_group
            for k in stabilizer_of(c, y):
                assert np.array_equal(_twisted(c, W.elements[k], y, None), y)


def test_sl2_census_frozen():
    # Q = -1, n = 8: n* = 4, X = Z/4, orbits {0}, {1, 3}, {2}; {2} is not splitting
    c = make_cover("A", 1, 8, Q=-1)
    orbs = enumerate_orbits(c)
    assert [o.size for o in orbs] == [1, 2, 1]
    assert [o.splitting for o in orbs] == [True, True, False]
    assert s_property(orbs[2]) == "certified"


def test_twist_shifts_are_w_z_minus_z():
    c = make_cover("B", 2, 3)
    W = c.datum.weyl_group
    sh = twist_shifts(c, "rho")
    rho = np.array([float(x) for x in c.datum.rho_check])
    for k, w in enumerate(W.elements):
        assert np.allclose(sh[k], w.matrix @ rho - rho)


def test_delta_a_y():
    c = make_cover("A", 2, 1)
    assert delta_a_y(c, (0, 0)) == (1, 2)
    assert delta_a_y(c, (1, 0)) == (0,)
    # n = 2: <alpha_1 + alpha_2, (1, 1)> = 2 = n, so only the affine node fixes it
    c = make_cover("A", 2, 2)
    assert delta_a_y(c, (1, 1)) == (0,)
    assert delta_a_y(c, (1, 0)) == ()


@pytest.mark.parametrize("n", range(1, 13))
def test_sl2_persistence(n):
    # Q = -1: saturated iff n odd; n = 2 mod 4 is 0- but not rho-persistent,
    # 4 | n is rho- but not 0-persistent
    c = make_cover("A", 1, n, Q=-1)
    assert c.is_saturated == (n % 2 == 1)
    want = {1: (True, True), 3: (True, True), 2: (True, False), 0: (False, True)}[n % 4]
    assert (is_z_persistent(c, None), is_z_persistent(c, "rho")) == want


def test_persistence_and_parabolic():
    assert is_z_persistent(make_cover("A", 2, 4), None)
    assert not is_z_persistent(make_cover("A", 2, 3), None)
    c = make_cover("A", 2, 4)
    W = c.datum.weyl_group
    assert is_parabolic(W, [0])
    orbs = enumerate_orbits(c)
    assert all(o.parabolic_stabilizer == is_parabolic(W, o.stabilizer) for o in orbs)


@settings(max_examples=25)
@given(st.sampled_from(COVERS), st.integers(0, 10 ** 6))
def test_orbit_invariance_under_simple_reflections(case, seed):
    t, r, n, Q = case
    c = make_cover(t, r, n, Q=Q)
    orbs = enumerate_orbits(c, "rho")
    o = orbs[seed % len(orbs)]
    keys = set(int(k) for k in o.elements)
    W = c.datum.weyl_group
    for k in keys:
        y = c.X.decode(k)
        for i in range(r):
            assert c.X.encode(_twisted(c, W.simple(i), y, "rho")) in keys


@pytest.mark.parametrize("t,r", [("A", 2), ("A", 3), ("B", 2), ("C", 3), ("G", 2), ("D", 4)])
def test_saturated_implies_persistent(t, r):
    for n in range(1, 9):
        c = make_cover(t, r, n)
        if c.is_saturated:
            assert is_z_persistent(c, None) and is_z_persistent(c, "rho")
        if c.is_oasitic:
            assert c.is_very_saturated and c.is_saturated
