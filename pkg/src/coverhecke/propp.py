"""
Genuine pro-p Iwahori-Hecke algebra from its Iwahori-Matsumoto presentation.

The group ``W~(1) = N~(T) / T_1`` is modelled by normal forms
``zeta**k * s(t) * w_dot`` where

* ``t`` is a torus element modulo ``T_1``, stored as valuations ``v`` and
  discrete logarithms ``l`` (mod ``q - 1``) of its coordinates
  ``a_i = varpi**v_i * g**l_i`` against the basis of ``Y``;
* ``s`` is the section with ``s(t) s(t') = sigma(t, t') s(t t')`` for the
  bilinear cocycle ``sigma = sum_ij D_ij (a_i, a'_j)_n``;
* ``w_dot`` is the product of ``w~_alpha(1)`` along the stored reduced word.

Conjugation by ``w~_alpha(1)`` uses ``w s(y(a)) w^{-1} = s(y(a)) h~_alpha(a^{-<alpha, y>})``
with ``h~_alpha = s o alpha^vee``; squares use ``w~_alpha(1)^2 = h~_alpha(-1)``.

The algebra has basis ``T_g`` (``g`` modulo ``mu_n``, ``T_{zeta g} = zeta T_g``),
multiplies length-additive pairs by the group law, and otherwise uses the
quadratic relations

``T_s^2 = q T_{s^2} + sum_u chi_s(u) T_{h~(u)} T_s``

with ``chi_s = 1`` for finite simple reflections and
``chi_s = (-, varpi)_n^{Q(alpha^vee)}`` for the affine one.  The affine
generator needs ``h~_{alpha^dag} = s o alpha^{dag, vee}``, which holds for
simple roots; hence the algebra is built for rank one only.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import numpy as np

from .cover import CoverSpec
from .exact import ConfigurationError, Cyclo, Fq, TameElement, hilbert_symbol, sqrt_q
from .rootdata import ResourceError

__all__ = [
    "ProPGroup",
    "ProPHecke",
    "ProPElt",
    "propp_mul",
    "propp_theta",
    "propp_checks",
    "verify_br1",
    "check_quadratic",
    "check_basic_relations",
    "check_idempotent_support",
    "check_associativity",
    "check_bernstein_triangular",
    "check_invertibility",
    "check_theta_scalars",
    "check_iwahori_projection",
]

MAX_RANK = 1


def _root(n: int, k: int):
    k %= n
    if k == 0:
        return 1
    if 2 * k == n:
        return -1
    return Cyclo.root(n, k)


def _clean(x):
    if isinstance(x, Cyclo) and x.is_rational():
        x = x.to_fraction()
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


# ---------------------------------------------------------------------------
# the group W~(1)
# ---------------------------------------------------------------------------

class ProPGroup:
    """Normal-form arithmetic in ``W~(1)``.

    Elements are tuples ``(k, v, l, w)``: ``k`` in ``Z/n``, ``v`` and ``l``
    coordinate tuples, ``w`` a Weyl group index.
    """

    def __init__(self, cover: CoverSpec, q: int):
        if (q - 1) % cover.n:
            raise ConfigurationError(f"n = {cover.n} must divide q - 1 = {q - 1}")
        self.cover = cover
        self.q = int(q)
        self.n = cover.n
        self.m = self.q - 1
        R = cover.datum
        self.R = R
        self.W = R.weyl_group
        self.dim = R.dim
        self.D = [[int(x) for x in row] for row in cover.D]
        self.half = self.m // 2 if self.q % 2 else 0
        self.minus_one = self.half  # dlog(-1)
        self._neg = {}
        P = R.positive_roots
        self._pos = [[int(x) for x in row] for row in P]
        for k, M in enumerate(self.W.matrices):
            inv = P @ M
            self._neg[k] = [bool(x < 0) for x in inv @ R.rho2_check]
        self._refl = [[[int(x) for x in row] for row in s] for s in R.reflections]
        self._coroots = [[int(x) for x in c] for c in R.simple_coroots]
        self._roots = [[int(x) for x in a] for a in R.simple_roots]
        self._words = [w.word for w in self.W.elements]
        self._lengths = [w.length for w in self.W.elements]

    # -- torus -------------------------------------------------------------
    def zero_torus(self):
        return (0,) * self.dim, (0,) * self.dim

    def hilb(self, v1, l1, v2, l2) -> int:
        """Tame symbol exponent of ``(varpi^v1 g^l1, varpi^v2 g^l2)_n``."""
        return (v1 * v2 * self.half + v2 * l1 - v1 * l2) % self.n

    def sigma(self, t1, t2) -> int:
        (v1, l1), (v2, l2) = t1, t2
        tot = 0
        for i in range(self.dim):
            for j in range(self.dim):
                d = self.D[i][j]
                if d:
                    tot += d * self.hilb(v1[i], l1[i], v2[j], l2[j])
        return tot % self.n

    def torus_add(self, t1, t2):
        (v1, l1), (v2, l2) = t1, t2
        return (tuple(a + b for a, b in zip(v1, v2)),
                tuple((a + b) % self.m for a, b in zip(l1, l2)))

    def torus_neg(self, t):
        v, l = t
        return tuple(-a for a in v), tuple((-a) % self.m for a in l)

    def cocharacter(self, y, v: int = 0, l: int = 0):
        """Torus element ``y(varpi^v g^l)``."""
        return tuple(int(c) * v for c in y), tuple((int(c) * l) % self.m for c in y)

    def _section_correction(self, t) -> int:
        # s(t) = zeta^{-c(t)} prod_i s(e_i(a_i)),  c(t) = sum_{i<j} D_ij (a_i, a_j)
        v, l = t
        tot = 0
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if self.D[i][j]:
                    tot += self.D[i][j] * self.hilb(v[i], l[i], v[j], l[j])
        return tot % self.n

    def conj_simple(self, i: int, t):
        """``w~_i(1) s(t) w~_i(1)^{-1} = zeta^k s(s_i t)``; returns ``(k, s_i t)``."""
        v, l = t
        S = self._refl[i]
        a = self._coroots[i]
        alpha = self._roots[i]
        k = -self._section_correction(t)
        parts = []
        for j in range(self.dim):
            if v[j] == 0 and l[j] == 0:
                continue
            m_j = alpha[j]
            d_ja = sum(self.D[j][c] * a[c] for c in range(self.dim))
            k += self.hilb(v[j], l[j], v[j], l[j]) * (-m_j) * d_ja
            col = [S[r][j] for r in range(self.dim)]
            parts.append((tuple(c * v[j] for c in col), tuple((c * l[j]) % self.m for c in col)))
        acc = self.zero_torus()
        for p in parts:
            k += self.sigma(acc, p)
            acc = self.torus_add(acc, p)
        return k % self.n, acc

    def conj_weyl(self, w: int, t):
        k = 0
        for i in reversed(self._words[w]):
            k2, t = self.conj_simple(i, t)
            k += k2
        return k % self.n, t

    def _weyl_index_mul(self, a, b):
        return int(self.W.multiply(a, b))

    def simple_index(self, i: int) -> int:
        return self.W.index(self.R.reflections[i])

    def weyl_product(self, w1: int, w2: int):
        """``w1_dot w2_dot = zeta^k s(tau) (w1 w2)_dot``; returns ``(k, tau, w)``."""
        k, tau, cur = 0, self.zero_torus(), w1
        for i in self._words[w2]:
            si = self.simple_index(i)
            nxt = self._weyl_index_mul(cur, si)
            if self._lengths[nxt] > self._lengths[cur]:
                cur = nxt
                continue
            h = self.cocharacter(self._coroots[i], 0, self.minus_one)
            kc, h2 = self.conj_weyl(nxt, h)
            k += kc + self.sigma(tau, h2)
            tau = self.torus_add(tau, h2)
            cur = nxt
        return k % self.n, tau, cur

    # -- group law -----------------------------------------------------------
    def element(self, k=0, t=None, w=0):
        t = self.zero_torus() if t is None else (tuple(int(x) for x in t[0]), tuple(int(x) % self.m for x in t[1]))
        return (int(k) % self.n, t[0], t[1], int(w))

    def identity(self):
        return self.element()

    def mul(self, g1, g2):
        k1, v1, l1, w1 = g1
        k2, v2, l2, w2 = g2
        kc, t2 = self.conj_weyl(w1, (v2, l2))
        t1 = (v1, l1)
        k = k1 + k2 + kc + self.sigma(t1, t2)
        t = self.torus_add(t1, t2)
        kw, tau, w = self.weyl_product(w1, w2)
        k += kw + self.sigma(t, tau)
        t = self.torus_add(t, tau)
        return (k % self.n, t[0], t[1], w)

    def torus_inverse(self, k, t):
        """Inverse of ``zeta^k s(t)``."""
        nt = self.torus_neg(t)
        return self.element(-k - self.sigma(t, nt), nt, 0)

    def inverse(self, g):
        k, v, l, w = g
        winv = int(self.W.inverse_index[w])
        x = self.element(0, None, winv)
        p = self.mul(self.element(0, None, w), x)  # zeta^a s(tau), identity Weyl part
        wdot_inv = self.mul(x, self.torus_inverse(p[0], (p[1], p[2])))
        return self.mul(wdot_inv, self.torus_inverse(k, (v, l)))

    def length(self, g) -> int:
        _, v, _, w = g
        neg = self._neg[w]
        tot = 0
        for b, row in enumerate(self._pos):
            tot += abs(sum(r * x for r, x in zip(row, v)) + (1 if neg[b] else 0))
        return tot

    def key(self, g):
        return g[1], g[2], g[3]

    def torus_unit(self, l):
        return self.element(0, ((0,) * self.dim, tuple(l)), 0)

    def s_y(self, y, k=0):
        """``s_y = s(y(varpi))``."""
        return self.element(k, self.cocharacter(y, 1, 0), 0)


# ---------------------------------------------------------------------------
# the algebra
# ---------------------------------------------------------------------------

class ProPHecke:
    """Pro-p Iwahori-Hecke algebra of a rank-one cover at residue field size ``q``."""

    def __init__(self, cover: CoverSpec, q: int):
        if cover.datum.rank > MAX_RANK:
            raise ResourceError(f"pro-p algebra is implemented for rank <= {MAX_RANK}")
        self.cover = cover
        self.G = ProPGroup(cover, q)
        self.q = int(q)
        self.n = cover.n
        G = self.G
        a = G._coroots[0]
        s_fin = G.element(0, None, G.simple_index(0))
        s_aff = G.element(0, G.cocharacter(a, -1, 0), G.simple_index(0))
        self.generators = [s_aff, s_fin]
        Qa = cover.Q_form(a)
        self.Q_alpha = Qa
        # chi_s(u) exponents in Z/n as functions of dlog u
        self._chi = [lambda l: (Qa * l) % self.n, lambda l: 0]
        self._gen_inv = [G.inverse(s) for s in self.generators]
        self._units = [G.torus_unit(G.cocharacter(a, 0, l)[1]) for l in range(G.m)]
        self._decomp: dict = {}
        self._theta: dict = {}

    # -- basis -------------------------------------------------------------
    def T(self, g) -> "ProPElt":
        return ProPElt(self, {self.G.key(g): _root(self.n, g[0])})

    def one(self) -> "ProPElt":
        return self.T(self.G.identity())

    def _as_group(self, key):
        v, l, w = key
        return (0, v, l, w)

    def h_alpha(self, b_dlog: int, v: int = 0):
        """``h~_alpha(varpi^v g^b)``."""
        G = self.G
        return G.element(0, G.cocharacter(G._coroots[0], v, b_dlog), 0)

    def _times_generator(self, terms: dict, i: int) -> dict:
        G = self.G
        s = self.generators[i]
        sinv = self._gen_inv[i]
        out: dict = {}

        def add(g, c):
            kk = G.key(g)
            out[kk] = out.get(kk, 0) + c * _root(self.n, g[0])

        for key, c in terms.items():
            g = self._as_group(key)
            gs = G.mul(g, s)
            if G.length(gs) > G.length(g):
                add(gs, c)
                continue
            gp = G.mul(g, sinv)
            add(G.mul(gp, G.mul(s, s)), c * self.q)
            for l in range(G.m):
                hs = G.mul(self.h_alpha(l), s)
                add(G.mul(gp, hs), c * _root(self.n, self._chi[i](l)))
        return out

    def decompose(self, g):
        """``(word, omega)`` with ``g = s_word[0] ... s_word[-1] omega`` and ``l(omega) = 0``."""
        G = self.G
        key = g
        if key in self._decomp:
            return self._decomp[key]
        word, cur = [], g
        while G.length(cur) > 0:
            L = G.length(cur)
            for i, sinv in enumerate(self._gen_inv):
                cand = G.mul(sinv, cur)
                if G.length(cand) < L:
                    word.append(i)
                    cur = cand
                    break
            else:  # pragma: no cover
                raise RuntimeError("no descent")
        out = (tuple(word), cur)
        self._decomp[key] = out
        return out

    def _times_basis(self, terms: dict, g) -> dict:
        word, omega = self.decompose(g)
        for i in word:
            terms = self._times_generator(terms, i)
        G = self.G
        out: dict = {}
        for key, c in terms.items():
            h = G.mul(self._as_group(key), omega)
            kk = G.key(h)
            out[kk] = out.get(kk, 0) + c * _root(self.n, h[0])
        return out

    def multiply(self, a: "ProPElt", b: "ProPElt") -> "ProPElt":
        out: dict = {}
        for key, cb in b.terms.items():
            part = self._times_basis(dict(a.terms), self._as_group(key))
            for k2, c in part.items():
                out[k2] = out.get(k2, 0) + c * cb
        return ProPElt(self, out)

    def inverse_T(self, g) -> "ProPElt":
        """``T_g^{-1}`` from the quadratic relations (all ``T_g`` are invertible)."""
        G = self.G
        word, omega = self.decompose(g)
        out = self.T(G.inverse(omega))
        qinv = Fraction(1, self.q)
        for i in reversed(word):
            s = self.generators[i]
            sinv = self._gen_inv[i]
            # T_s (T_s - C) = q T_{s^2},  C = sum_u chi(u) T_{s^{-1} h(u) s}
            C = self.element({})
            for l in range(G.m):
                C = C + self.T(G.mul(sinv, G.mul(self.h_alpha(l), s))).scale(_root(self.n, self._chi[i](l)))
            s2inv = self.T(G.inverse(G.mul(s, s)))
            inv_s = ((self.T(s) - C) * s2inv).scale(qinv)
            out = out * inv_s
        return out

    def element(self, terms) -> "ProPElt":
        return ProPElt(self, terms)

    # -- idempotents and Bernstein elements ----------------------------------
    def character_values(self, lam):
        """``chi_lam`` on ``T_kappa``: ``chi(t) = zeta_{q-1}^{<lam, l(t)>}``."""
        return lam

    def c(self, lam) -> "ProPElt":
        """``c(chi) = |T_kappa|^{-1} sum_t chi(t) T_t`` for ``chi = chi_lam``."""
        G = self.G
        N = G.m ** G.dim
        terms = {}
        for l in itertools.product(range(G.m), repeat=G.dim):
            e = sum(int(a) * b for a, b in zip(lam, l))
            terms[((0,) * G.dim, tuple(l), 0)] = _root(G.m, e) * Fraction(1, N)
        return ProPElt(self, terms)

    def theta(self, g) -> "ProPElt":
        """``Theta_t`` for a torus element ``g = zeta^k s(t)``.

        ``Theta_t = q^{-l(t)/2} T_t`` on the dominant cone ``<alpha, v(t)> >= 0``,
        extended multiplicatively.  Of the sign and power choices for this
        normalisation only this one satisfies the Bernstein relation.
        """
        G = self.G
        k, v, l, w = g
        if w != 0:
            raise ConfigurationError("Theta needs a torus element")
        if g in self._theta:
            return self._theta[g]
        pair = sum(a * b for a, b in zip(G._roots[0], v))
        if pair >= 0:
            out = self.T(g).scale(_qpow_half(self.q, -G.length(g)))
        else:
            out = self.theta(G.inverse(g)).inverse_via(self)
        self._theta[g] = out
        return out

    def c_alpha(self, j: int) -> "ProPElt":
        """``c_alpha(j) = (q-1)^{-1} sum_b (b, varpi)_n^j Theta_{h~_alpha(b)}``."""
        G = self.G
        out = self.element({})
        for l in range(G.m):
            out = out + self.T(self.h_alpha(l)).scale(_root(self.n, j * l))
        return out.scale(Fraction(1, G.m))


def _qpow_half(q, e2):
    if e2 % 2 == 0:
        return Fraction(q) ** (e2 // 2)
    r = math.isqrt(q)
    base = r if r * r == q else sqrt_q(q)
    out = base ** abs(e2)
    return out if e2 > 0 else 1 / out


class ProPElt:
    """Immutable element of :class:`ProPHecke`: a map ``(v, l, w) -> scalar``."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: ProPHecke, terms: dict):
        self.algebra = algebra
        self.terms = {k: _clean(v) for k, v in terms.items() if v != 0}

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return ProPElt(self.algebra, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        return ProPElt(self.algebra, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, ProPElt):
            return self.algebra.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, ProPElt):
            return NotImplemented
        return (self - other).terms == {}

    def __hash__(self):
        return hash(frozenset(self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def inverse_via(self, A: ProPHecke) -> "ProPElt":
        """Inverse of a scalar multiple of a single basis element."""
        if len(self.terms) != 1:
            raise ConfigurationError("only monomials are inverted")
        (key, c), = self.terms.items()
        return A.inverse_T(A._as_group(key)).scale(1 / c if not isinstance(c, int) else Fraction(1, c))

    def max_length(self) -> int:
        G = self.algebra.G
        return max((G.length((0,) + k) for k in self.terms), default=-1)

    def to_json(self):
        return {"terms": [{"v": list(v), "l": list(l), "w": w, "coeff": str(c)}
                          for (v, l, w), c in sorted(self.terms.items())]}

    def __repr__(self):
        return " + ".join(f"({c})T[{list(v)},{list(l)},{w}]" for (v, l, w), c in sorted(self.terms.items())) or "0"


def propp_mul(a: ProPElt, b: ProPElt) -> ProPElt:
    """Product in the pro-p algebra (normal-form descent)."""
    return a * b


def propp_theta(A: ProPHecke, y, h=None, zeta: int = 0) -> ProPElt:
    """``Theta_t`` for ``t = zeta_n^zeta * s_y * s(h)`` with ``h`` a tuple of unit dlogs."""
    G = A.G
    t = G.s_y(y, zeta)
    if h is not None:
        t = G.mul(t, G.torus_unit(tuple(h)))
    return A.theta(t)


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

def _report(relation, A, checked, failure=None, **extra):
    out = {"relation": relation, "cover": A.cover.to_json(), "q": A.q,
           "vectors_checked": checked, "status": "pass" if failure is None else "fail"}
    if failure is not None:
        out["counterexample"] = failure
    out.update(extra)
    return out


def check_quadratic(A: ProPHecke) -> list:
    """Quadfin and Quadaff written in the paper's form."""
    G = A.G
    out = []
    # finite: T^2 = q T_{h(-1)} + sum_u T_{h(u)} T
    s = A.generators[1]
    T = A.T(s)
    rhs = A.T(A.h_alpha(G.minus_one)).scale(A.q)
    for l in range(G.m):
        rhs = rhs + A.T(A.h_alpha(l)) * T
    fail = None if T * T == rhs else {"generator": "finite"}
    out.append(_report("quadratic_finite", A, 1, fail))
    # affine: T^2 = q eps^Q T_{h(-1)} + sum_u (u, varpi)^Q T_{h(u)} T
    s = A.generators[0]
    T = A.T(s)
    F = Fq.get(A.q)
    w = TameElement.uniformizer(F)
    eps_k = hilbert_symbol(w, w, A.q, A.n)
    rhs = A.T(A.h_alpha(G.minus_one)).scale(A.q * _root(A.n, eps_k * A.Q_alpha))
    for l in range(G.m):
        u = TameElement.unit(F, F.exp[l])
        k = hilbert_symbol(u, w, A.q, A.n) * A.Q_alpha
        rhs = rhs + (A.T(A.h_alpha(l)) * T).scale(_root(A.n, k))
    fail = None if T * T == rhs else {"generator": "affine"}
    out.append(_report("quadratic_affine", A, 1, fail))
    return out



def check_basic_relations(A: ProPHecke, y_range=range(-2, 3)) -> dict:
    """``T_alpha c(chi) = c(w chi) T_alpha`` and ``Theta_t c(chi) = c(phi(t) chi) Theta_t``."""
    G = A.G
    m = G.m
    s = A.generators[1]
    Ts = A.T(s)
    sinv = G.inverse(s)
    failure = None
    checked = 0
    chars = list(itertools.product(range(m), repeat=G.dim))
    for lam in chars:
        # (w chi)(t) = chi(s^{-1} t s): transport the character through the group
        lam_w = _transport(A, lam, sinv, s)
        if not (Ts * A.c(lam) == A.c(lam_w) * Ts):
            failure = {"chi": list(lam), "operator": "T_alpha"}
            break
        for y in y_range:
            yv = [y * c for c in G._coroots[0]] if G.dim == 1 else None
            th = propp_theta(A, yv)
            lam_t = _phi_shift(A, lam, yv)
            if not (th * A.c(lam) == A.c(lam_t) * th):
                failure = {"chi": list(lam), "y": yv, "operator": "Theta"}
                break
            checked += 1
        if failure:
            break
    return _report("basic_hecke_relations", A, checked, failure)


def _transport(A, lam, left, right):
    """``lam'`` with ``chi_lam'(t) = chi_lam(left t right)`` on ``T_kappa``."""
    G = A.G
    out = []
    for i in range(G.dim):
        e = [0] * G.dim
        e[i] = 1
        g = G.mul(left, G.mul(G.torus_unit(tuple(e)), right))
        out.append(sum(a * b for a, b in zip(lam, g[2])) % G.m)
    return tuple(out)


def _phi_shift(A, lam, y):
    """``phi(s_y) chi``: multiply by ``t -> [s_y, t]``."""
    G = A.G
    sy = G.s_y(y)
    syi = G.inverse(sy)
    out = list(lam)
    for i in range(G.dim):
        e = [0] * G.dim
        e[i] = 1
        u = G.torus_unit(tuple(e))
        comm = G.mul(G.mul(sy, u), G.mul(syi, G.inverse(u)))
        # commutator lies in mu_n: exponent k of zeta_n = zeta_{q-1}^{k (q-1)/n}
        assert comm[1] == (0,) * G.dim and comm[3] == 0
        out[i] = (out[i] + comm[0] * (G.m // G.n)) % G.m
    return tuple(out)


def _orbit_partition(A):
    """``W x| X_{Q,n}`` orbits on characters of ``T_kappa``."""
    G = A.G
    m = G.m
    chars = list(itertools.product(range(m), repeat=G.dim))
    s = A.generators[1]
    sinv = G.inverse(s)
    gens_y = [tuple(int(x) for x in row) for row in np.eye(G.dim, dtype=np.int64)]
    seen, parts = set(), []
    for lam in chars:
        if lam in seen:
            continue
        orb, stack = {lam}, [lam]
        while stack:
            cur = stack.pop()
            nbrs = [_transport(A, cur, sinv, s)]
            for y in gens_y:
                nbrs.append(_phi_shift(A, cur, y))
                nbrs.append(_phi_shift(A, cur, tuple(-x for x in y)))
            for nb in nbrs:
                if nb not in orb:
                    orb.add(nb)
                    stack.append(nb)
        seen |= orb
        parts.append(frozenset(orb))
    return parts


def check_idempotent_support(A: ProPHecke, v_range=range(-2, 3)) -> dict:
    """``c(chi') T_g c(chi) != 0`` exactly when ``chi'`` is in the orbit of ``chi``."""
    G = A.G
    m = G.m
    chars = list(itertools.product(range(m), repeat=G.dim))
    parts = _orbit_partition(A)
    label = {lam: i for i, p in enumerate(parts) for lam in p}
    linked = {lam: set() for lam in chars}
    idem = {lam: A.c(lam) for lam in chars}
    failure = None
    checked = 0
    for w in range(len(G.W)):
        for v in itertools.product(v_range, repeat=G.dim):
            g = G.element(0, (v, (0,) * G.dim), w)
            Tg = A.T(g)
            for lam in chars:
                right = Tg * idem[lam]
                for lam2 in chars:
                    nz = not (idem[lam2] * right).is_zero()
                    if nz:
                        linked[lam].add(lam2)
                    if nz != (label[lam] == label[lam2]) and nz:
                        failure = failure or {"chi": list(lam), "chi_prime": list(lam2), "g": [list(v), w]}
                checked += 1
    # every pair in one orbit must be reached by some g in the window
    for lam in chars:
        if {label[x] for x in linked[lam]} != {label[lam]}:
            failure = failure or {"chi": list(lam), "reached_other_orbit": True}
        if linked[lam] != set(parts[label[lam]]):
            failure = failure or {"chi": list(lam), "orbit_not_exhausted": True}
    return _report("idempotent_support", A, checked, failure,
                   orbits=[sorted(list(x) for x in p) for p in parts])


def random_elements(A: ProPHecke, count: int, rng: random.Random, max_len: int = 2, terms: int = 2):
    G = A.G
    out = []
    for _ in range(count):
        e = A.element({})
        for _ in range(terms):
            w = rng.randrange(len(G.W))
            v = tuple(rng.randint(-1, 1) for _ in range(G.dim))
            l = tuple(rng.randrange(G.m) for _ in range(G.dim))
            g = G.element(rng.randrange(G.n), (v, l), w)
            if G.length(g) > max_len:
                continue
            e = e + A.T(g).scale(rng.choice([1, -1, 2, Fraction(1, 2)]))
        out.append(e)
    return out


def check_associativity(A: ProPHecke, triples: int = 200, seed: int = 0) -> dict:
    rng = random.Random(seed)
    pool = random_elements(A, 30, rng)
    failure = None
    for t in range(triples):
        a, b, c = (pool[rng.randrange(len(pool))] for _ in range(3))
        if not ((a * b) * c == a * (b * c)):
            failure = {"triple": t}
            break
    return _report("associativity", A, triples, failure)


def check_bernstein_triangular(A: ProPHecke, y_range=range(-2, 3)) -> dict:
    """``Theta_{s_y} T_w = c T_{s_y w} + (strictly shorter terms)``."""
    G = A.G
    failure = None
    checked = 0
    for y in y_range:
        yv = [y * c for c in G._coroots[0]]
        th = propp_theta(A, yv)
        for w in range(len(G.W)):
            lead = G.mul(G.s_y(yv), G.element(0, None, w))
            prod = th * A.T(G.element(0, None, w))
            L = G.length(lead)
            lead_key = G.key(lead)
            if lead_key not in prod.terms:
                failure = {"y": yv, "w": w, "missing_leading_term": True}
            elif any(G.length((0,) + k) >= L for k in prod.terms if k != lead_key):
                failure = {"y": yv, "w": w, "not_triangular": True}
            checked += 1
    return _report("bernstein_triangular", A, checked, failure)


def verify_br1(A: ProPHecke, y) -> dict:
    """Both sides of the Bernstein relation for ``s_y`` as exact elements.

    With ``m = <y, alpha>`` the two infinite sums differ by the terms with
    ``j`` between ``1 - m`` and ``0`` (or ``1`` and ``-m``), leaving

    ``T Theta_{s_y} - Theta_{w(1).s_y} T = sgn (q-1) sum_j
    eps^{j Q (1+m)} Theta_{s_y h(varpi^j)} c_alpha((j + m) Q)``.
    """
    G = A.G
    yv = [int(x) for x in y]
    m = sum(a * b for a, b in zip(G._roots[0], yv))
    s = A.generators[1]
    Ts = A.T(s)
    sy = G.s_y(yv)
    lhs = Ts * A.theta(sy) - A.theta(G.mul(G.mul(s, sy), G.inverse(s))) * Ts
    F = Fq.get(A.q)
    w = TameElement.uniformizer(F)
    eps_k = hilbert_symbol(w, w, A.q, A.n)
    Qa = A.Q_alpha
    if m > 0:
        js, sign = range(1 - m, 1), 1
    elif m < 0:
        js, sign = range(1, -m + 1), -1
    else:
        js, sign = (), 0
    rhs = A.element({})
    for j in js:
        t = G.mul(sy, A.h_alpha(0, v=j))
        term = A.theta(t) * A.c_alpha((j + m) * Qa)
        rhs = rhs + term.scale(sign * (A.q - 1) * _root(A.n, eps_k * j * Qa * (1 + m)))
    failure = None if lhs == rhs else {"y": yv}
    return _report("BR1", A, 1, failure, y=yv)


def check_invertibility(A: ProPHecke, v_range=range(-2, 3)) -> dict:
    """Length-zero ``g``: ``T_g T_{g^{-1}} = T_1``; generators: ``T_s T_s^{-1} = T_1``."""
    G = A.G
    failure = None
    checked = 0
    one = A.one()
    cands = [G.mul(A.generators[0], A.generators[1])]
    for l in range(G.m):
        cands.append(A.h_alpha(l))
    for g in cands:
        if G.length(g) == 0 and not (A.T(g) * A.T(G.inverse(g)) == one):
            failure = {"g": list(G.key(g))}
        checked += 1
    for g in A.generators:
        if not (A.T(g) * A.inverse_T(g) == one and A.inverse_T(g) * A.T(g) == one):
            failure = {"generator": list(G.key(g))}
        checked += 1
    return _report("invertibility", A, checked, failure)


def check_theta_scalars(A: ProPHecke, y_range=range(-3, 4)) -> dict:
    """``Theta_{s_y1} Theta_{s_y2} = zeta^k Theta_{s_{y1+y2}}`` with ``k`` from the torus word normal form."""
    from .heckemod import canonicalize_torus_word

    G = A.G
    a = G._coroots[0]
    failure = None
    checked = 0
    for y1 in y_range:
        for y2 in y_range:
            u = [y1 * x for x in a]
            v = [y2 * x for x in a]
            k, tot = canonicalize_torus_word(A.cover, A.q, [("s", u), ("s", v)])
            lhs = propp_theta(A, u) * propp_theta(A, v)
            rhs = propp_theta(A, list(tot)).scale(_root(A.n, k))
            if not lhs == rhs:
                failure = {"y1": u, "y2": v}
            checked += 1
    return _report("theta_scalars", A, checked, failure)


def check_iwahori_projection(A: ProPHecke, q=None) -> dict:
    """``c(1) H c(1)`` satisfies the defining relations of the Iwahori-level algebra.

    On ``Y_{Q,n} = Z b`` the elements ``Theta_{s_{kb}}`` multiply with the
    cocycle ``eps^{D(b,b) k k'}``; the twist ``eps^{D(b,b) k(k-1)/2}`` removes
    it.  The images of ``T_s`` and ``Theta_{+-b}`` are then compared with the
    quadratic and Bernstein relations evaluated in :class:`IwahoriHecke`.
    """
    from .heckemod import IwahoriHecke

    G = A.G
    cover = A.cover
    H = IwahoriHecke(cover, A.q)
    nb = int(cover.n_simple[0])
    b = [nb * x for x in G._coroots[0]]
    Dbb = int(cover.D_form(b, b))
    F = Fq.get(A.q)
    w = TameElement.uniformizer(F)
    eps_k = hilbert_symbol(w, w, A.q, A.n)
    c1 = A.c((0,) * G.dim)

    def theta(k):
        return propp_theta(A, [k * x for x in b]).scale(_root(A.n, eps_k * Dbb * k * (k - 1) // 2)) * c1

    T = A.T(A.generators[1]) * c1
    z, mz = theta(1), theta(-1)
    HT, Hz, Hmz = H.T_simple(1), H.theta(b), H.theta([-x for x in b])
    checks = {
        "quadratic": (T * T == T.scale(A.q - 1) + c1.scale(A.q),
                      HT * HT == HT.scale(A.q - 1) + H.one().scale(A.q)),
        "theta_group": (z * mz == c1 and theta(1) * theta(1) == theta(2),
                        Hz * Hmz == H.one()),
        "bernstein": (z * T - T * mz == (z + c1).scale(A.q - 1),
                      Hz * HT - HT * Hmz == (Hz + H.one()).scale(A.q - 1)),
    }
    failure = None
    for name, (pro, iw) in checks.items():
        if not (pro and iw):
            failure = {"relation": name, "pro_p": pro, "iwahori": iw}
            break
    return _report("iwahori_projection", A, len(checks), failure)


def propp_checks(q: int, n: int, rank: int = 1, Q=-1, cover: CoverSpec | None = None,
                 triples: int = 200, seed: int = 0) -> list:
    """The structural check suite on ``A_rank`` with quadratic form ``Q``; one report per relation."""
    if q > 7:
        raise ResourceError("pro-p checks are limited to q <= 7")
    if cover is None:
        from .cover import make_cover

        cover = make_cover("A", rank, n, Q=Q)
    A = ProPHecke(cover, q)
    reports = check_quadratic(A)
    reports.append(check_invertibility(A))
    reports.append(check_theta_scalars(A))
    reports.append(check_iwahori_projection(A))
    reports.append(check_basic_relations(A))
    reports.append(check_idempotent_support(A))
    reports.append(check_associativity(A, triples, seed))
    reports.append(check_bernstein_triangular(A))
    a = A.G._coroots[0]
    reports.append(verify_br1(A, a))
    reports.append(verify_br1(A, [-x for x in a]))
    return reports
