import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from coverhecke.rootdata import (ExtAffineElt, ResourceError, WeylGroup,
                                 build_root_datum, cartan_matrix, resource_bound)

TYPES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 2), ("C", 3),
         ("D", 4), ("G", 2), ("F", 4)]
WEYL_ORDERS = {("A", 1): 2, ("A", 2): 6, ("A", 3): 24, ("B", 2): 8, ("B", 3): 48,
               ("C", 2): 8, ("C", 3): 48, ("D", 4): 192, ("G", 2): 12,
               ("F", 4): 1152, ("E", 6): 51840}
ROOT_COUNTS = {("A", 3): 12, ("B", 3): 18, ("D", 4): 24, ("G", 2): 12, ("F", 4): 48, ("E", 6): 72}


@pytest.mark.parametrize("t,r", list(WEYL_ORDERS))
def test_weyl_order(t, r):
    R = build_root_datum(t, r)
    assert R.weyl_order == WEYL_ORDERS[(t, r)]


@pytest.mark.parametrize("t,r", list(ROOT_COUNTS))
def test_root_count(t, r):
    assert build_root_datum(t, r).num_roots == ROOT_COUNTS[(t, r)]


@pytest.mark.parametrize("t,r", TYPES)
def test_cartan_is_pairing(t, r):
    R = build_root_datum(t, r)
    A = cartan_matrix(t, r)
    P = np.array([[R.pairing(R.simple_roots[i], R.simple_coroots[j]) for j in range(r)]
                  for i in range(r)])
    assert np.array_equal(P, A) or np.array_equal(P.T, A)
    assert all(A[i, i] == 2 for i in range(r))


@pytest.mark.parametrize("t,r", TYPES)
@pytest.mark.parametrize("flavor", ["sc", "adjoint"])
def test_reflections_preserve_roots(t, r, flavor):
    R = build_root_datum(t, r, flavor)
    roots = {tuple(int(x) for x in a) for a in R.roots}
    W = R.weyl_group
    for i in range(r):
        s = W.simple(i)
        img = {tuple(int(x) for x in s.act_root(np.array(a))) for a in roots}
        assert img == roots


@pytest.mark.parametrize("t,r", TYPES)
def test_longest_element(t, r):
    R = build_root_datum(t, r)
    W = R.weyl_group
    assert W.longest.length == len(R.positive_roots)
    assert max(w.length for w in W) == W.longest.length


@pytest.mark.parametrize("t,r", TYPES)
def test_rho_check_pairs_to_one(t, r):
    R = build_root_datum(t, r)
    for a in R.simple_roots:
        assert sum(int(x) * y for x, y in zip(a, R.rho_check)) == 1


def test_gl_flavor():
    R = build_root_datum("A", 2, "GL")
    assert R.dim == 3 and R.rank == 2
    with pytest.raises(ValueError):
        build_root_datum("B", 2, "GL")


@st.composite
def word_pair(draw):
    t, r = draw(st.sampled_from(TYPES[:9]))
    w1 = draw(st.lists(st.integers(0, r - 1), max_size=8))
    w2 = draw(st.lists(st.integers(0, r - 1), max_size=8))
    return build_root_datum(t, r), w1, w2


@given(word_pair())
def test_word_multiplication_matches_matrices(case):
    R, w1, w2 = case
    W = R.weyl_group
    a, b = W.from_word(w1), W.from_word(w2)
    ab = W.from_word(w1 + w2)
    assert np.array_equal(ab.matrix, a.matrix @ b.matrix) or np.array_equal(ab.matrix, b.matrix @ a.matrix)
    assert ab.length <= len(w1) + len(w2)
    assert ab.length % 2 == (len(w1) + len(w2)) % 2


@given(word_pair())
def test_length_is_inversion_count(case):
    R, w1, _ = case
    w = R.weyl_group.from_word(w1)
    neg = 0
    for a in R.positive_roots:
        img = w.act_root(np.array(a))
        if tuple(int(x) for x in img) not in {tuple(int(x) for x in b) for b in R.positive_roots}:
            neg += 1
    assert neg == w.length


@given(word_pair())
def test_inverse(case):
    R, w1, _ = case
    w = R.weyl_group.from_word(w1)
    assert w.inverse().length == w.length
    assert R.weyl_group.from_word(list(w.word) + list(w.inverse().word)).is_identity()


@given(word_pair(), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_extended_affine_action_is_group_action(case, ys):
    R, w1, w2 = case
    W = R.weyl_group
    y = np.array(ys[:R.dim], dtype=np.int64)
    a = ExtAffineElt(y, W.from_word(w1))
    b = ExtAffineElt(-y, W.from_word(w2))
    v = np.array(ys[::-1][:R.dim], dtype=np.int64)
    assert np.array_equal((a * b).act(v), a.act(b.act(v)))


def test_resource_bound_env(monkeypatch):
    monkeypatch.setenv("COVERHECKE_MAX_ELEMENTS", "10")
    assert resource_bound() == 10
    with pytest.raises(ResourceError):
        WeylGroup(build_root_datum("B", 3))
