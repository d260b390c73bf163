import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from coverhecke.exact import (ConfigurationError, Cyclo, Fq, TameElement,
                              cyclotomic_poly, epsilon, gauss_sum,
                              hilbert_symbol, sqrt_q)

CONDUCTORS = [1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 15, 20, 35]


def cyclo(N, max_size=6):
    coeffs = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4),
                      min_size=0, max_size=max_size)
    return coeffs.map(lambda c: Cyclo(N, c))


@st.composite
def cyclo_triple(draw):
    N = draw(st.sampled_from(CONDUCTORS))
    return N, draw(cyclo(N)), draw(cyclo(N)), draw(cyclo(N))


class TestCyclo:
    def test_root_relations(self):
        z = Cyclo.root(12, 1)
        assert z ** 12 == 1
        assert z ** 6 == -1
        assert z ** 4 != 1
        assert Cyclo.root(4, 1) ** 2 == -1

    def test_degree_matches_totient(self):
        for N in CONDUCTORS:
            assert Cyclo(N).degree == sum(1 for k in range(1, N + 1) if math.gcd(k, N) == 1)
            assert len(cyclotomic_poly(N)) == Cyclo(N).degree + 1

    def test_mixed_conductors_coerce(self):
        a = Cyclo.root(3, 1) + Cyclo.root(4, 1)
        assert complex(a) == pytest.approx(cmath.exp(2j * cmath.pi / 3) + 1j)

    @given(cyclo_triple())
    def test_field_axioms(self, t):
        N, a, b, c = t
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a - a == 0

    @given(cyclo_triple())
    def test_embedding_is_ring_map(self, t):
        N, a, b, _ = t
        assert complex(a * b) == pytest.approx(complex(a) * complex(b), abs=1e-9)
        assert complex(a + b) == pytest.approx(complex(a) + complex(b), abs=1e-9)

    @given(cyclo_triple())
    def test_inverse(self, t):
        N, a, _, _ = t
        if a.is_zero():
            return
        assert a * a.inv() == 1
        assert complex(a.inv()) == pytest.approx(1 / complex(a), rel=1e-9)

    @given(cyclo_triple())
    def test_conj_is_complex_conjugate(self, t):
        N, a, _, _ = t
        assert complex(a.conj()) == pytest.approx(complex(a).conjugate(), abs=1e-9)
        norm = a * a.conj()
        assert norm.conj() == norm

    def test_json_roundtrip_fields(self):
        a = Cyclo(5, [Fraction(1, 2), 3])
        assert a.to_json() == {"N": 5, "coeffs": [str(c) for c in a.coeffs]}


class TestFq:
    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 13, 25, 27])
    def test_multiplicative_group_is_cyclic(self, q):
        F = Fq.get(q)
        assert len(F.units()) == q - 1
        assert sorted(F.dlog(u) for u in F.units()) == list(range(q - 1))

    @pytest.mark.parametrize("q", [4, 9, 25])
    def test_dlog_is_homomorphism(self, q):
        F = Fq.get(q)
        for a in F.units():
            for b in F.units():
                assert F.dlog(F.mul(a, b)) == (F.dlog(a) + F.dlog(b)) % (q - 1)

    def test_bad_q(self):
        with pytest.raises(ConfigurationError):
            Fq(6)


Q_N = [(q, n) for q in (3, 4, 5, 7, 9, 13) for n in range(1, q) if (q - 1) % n == 0]


class TestGauss:
    @pytest.mark.parametrize("q,n", Q_N)
    def test_absolute_value(self, q, n):
        for k in range(1, n):
            g = gauss_sum(q, n, k)
            assert g * g.conj() == q

    @pytest.mark.parametrize("q,n", Q_N)
    def test_trivial_character(self, q, n):
        assert gauss_sum(q, n, 0) == -1

    @pytest.mark.parametrize("q,n", [(5, 4), (7, 3), (9, 8), (13, 6)])
    def test_against_floating_sum(self, q, n):
        F = Fq.get(q)
        for k in range(n):
            direct = sum(cmath.exp(2j * cmath.pi * (F.trace(u) / F.p + k * F.dlog(u) / n))
                         for u in F.units())
            assert complex(gauss_sum(q, n, k)) == pytest.approx(direct, abs=1e-9)

    @pytest.mark.parametrize("q,n", [(5, 4), (7, 6), (13, 12)])
    def test_conjugate_is_g_of_inverse_times_sign(self, q, n):
        # conj g(chi) = chi(-1) g(chi^{-1})
        F = Fq.get(q)
        half = (q - 1) // 2
        for k in range(1, n):
            sign = Cyclo.root(n, k * half % n) if n > 1 else 1
            assert gauss_sum(q, n, k).conj() == gauss_sum(q, n, -k) * sign

    def test_sqrt_q(self):
        for q in (3, 5, 7, 13):
            assert sqrt_q(q) * sqrt_q(q) == q


def tame(q):
    F = Fq.get(q)
    return st.builds(lambda m, i: TameElement(m, F.units()[i], F),
                     st.integers(-4, 4), st.integers(0, q - 2))


@st.composite
def symbol_case(draw):
    q, n = draw(st.sampled_from([(5, 4), (7, 6), (7, 3), (13, 12), (9, 8), (13, 4)]))
    return q, n, draw(tame(q)), draw(tame(q)), draw(tame(q))


class TestHilbert:
    @given(symbol_case())
    def test_bimultiplicative(self, case):
        q, n, a, b, c = case
        assert hilbert_symbol(a * b, c, q, n) == (hilbert_symbol(a, c, q, n) + hilbert_symbol(b, c, q, n)) % n
        assert hilbert_symbol(c, a * b, q, n) == (hilbert_symbol(c, a, q, n) + hilbert_symbol(c, b, q, n)) % n

    @given(symbol_case())
    def test_skew_symmetric(self, case):
        q, n, a, b, _ = case
        assert (hilbert_symbol(a, b, q, n) + hilbert_symbol(b, a, q, n)) % n == 0

    @given(symbol_case())
    def test_units_pair_trivially(self, case):
        q, n, a, b, _ = case
        F = a.field
        assert hilbert_symbol(TameElement.unit(F, a.u), TameElement.unit(F, b.u), q, n) == 0

    @pytest.mark.parametrize("q,n", Q_N)
    def test_epsilon_consistency(self, q, n):
        F = Fq.get(q)
        w = TameElement.uniformizer(F)
        minus_one = TameElement.unit(F, F.exp[(q - 1) // 2] if q % 2 else 1)
        k = hilbert_symbol(w, w, q, n)
        assert k == hilbert_symbol(minus_one, w, q, n)
        assert complex(Cyclo.root(n, k)) == pytest.approx(epsilon(q, n))

    def test_wild_rejected(self):
        F = Fq.get(5)
        w = TameElement.uniformizer(F)
        with pytest.raises(ConfigurationError):
            hilbert_symbol(w, w, 5, 3)
