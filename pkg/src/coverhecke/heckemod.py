"""
Genuine Iwahori-Hecke algebra and the Iwahori-level Gelfand-Graev module.

Three layers live here.

``IwahoriHecke``
    The generic affine Hecke algebra of ``Y_{Q,n} x| W`` in its
    Iwahori-Matsumoto basis, with the normalised Bernstein elements.
``FiniteGG``
    The finite Gelfand-Graev module on idempotents ``c(chi)`` for the
    characters of ``T(F_q)``.
``GGModule``
    The module on ``C[Y]`` with basis ``e_y`` on which ``Theta_z`` acts by
    translation and ``T_alpha`` by the three-case rule derived from the
    Bernstein relation.  All scalars other than Gauss sums are powers of
    ``eps = (varpi, varpi)_n``; they are carried as exponents in ``mu_n``.

Module operators act on the right: ``vec * T * Theta`` applies ``T`` first.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .cover import CoverSpec
from .exact import (ConfigurationError, Cyclo, Fq, TameElement, gauss_sum,
                    hilbert_symbol, sqrt_q)
from .orbits import OrbitRecord, enumerate_orbits, is_splitting

__all__ = [
    "PreconditionError",
    "IwahoriHecke",
    "HeckeElt",
    "hecke_mul",
    "bernstein_theta",
    "FiniteGG",
    "finite_gg",
    "GGVector",
    "GGModule",
    "canonicalize_torus_word",
    "verify_gg_relations",
    "default_window",
    "orbit_component",
    "compare_induced",
    "sl2_special",
]


class PreconditionError(ValueError):
    """An operation was called outside its hypotheses."""


# ---------------------------------------------------------------------------
# scalar rings
# ---------------------------------------------------------------------------

class _ConcreteScalars:
    """Exact scalars at a fixed prime power ``q`` (ints, Fractions, Cyclo)."""

    generic = False

    def __init__(self, q: int):
        self.q = int(q)
        r = math.isqrt(self.q)
        self._sqrt = r if r * r == self.q else None

    def sqrt_power(self, e2: int):
        """``q ** (e2 / 2)``."""
        if e2 % 2 == 0:
            return Fraction(self.q) ** (e2 // 2)
        base = self._sqrt if self._sqrt is not None else sqrt_q(self.q)
        out = base ** abs(e2)
        return out if e2 > 0 else 1 / out

    def inv(self, x):
        return Fraction(1) / x if isinstance(x, (int, Fraction)) else 1 / x

    @staticmethod
    def clean(x):
        if isinstance(x, Cyclo) and x.is_rational():
            x = x.to_fraction()
        if isinstance(x, Fraction) and x.denominator == 1:
            return int(x)
        return x

    @staticmethod
    def is_zero(x) -> bool:
        return x == 0


class _GenericScalars:
    """Laurent polynomials in ``q**(1/2)`` via sympy."""

    generic = True

    def __init__(self):
        import sympy
        self._sp = sympy
        self.q = sympy.Symbol("q", positive=True)

    def sqrt_power(self, e2: int):
        return self._sp.sqrt(self.q) ** e2

    def inv(self, x):
        return 1 / x

    def clean(self, x):
        return self._sp.expand(x)

    def is_zero(self, x) -> bool:
        return self._sp.expand(x) == 0


# ---------------------------------------------------------------------------
# Iwahori-Matsumoto layer
# ---------------------------------------------------------------------------

class IwahoriHecke:
    """Affine Hecke algebra of ``Y_{Q,n} x| W`` in the Iwahori-Matsumoto basis.

    Elements of ``Y_{Q,n} x| W`` are pairs ``(lam, w)`` with ``lam`` a tuple
    of ``Y`` coordinates in ``Y_{Q,n}`` and ``w`` an index into the Weyl
    group; they act on ``Y (x) R`` by ``v -> lam + w v``.  Lengths count the
    hyperplanes of the modified affine arrangement
    ``<beta / n_beta, v> = k`` separating the base alcove from its image.

    Parameters
    ----------
    cover : CoverSpec
    q : int, optional
        Residue field size.  When omitted, scalars are Laurent polynomials
        in a formal ``q**(1/2)``.
    """

    def __init__(self, cover: CoverSpec, q: int | None = None):
        self.cover = cover
        self.scalars = _GenericScalars() if q is None else _ConcreteScalars(q)
        self.q = self.scalars.q
        R = cover.datum
        self.W = R.weyl_group
        self._mats = self.W.matrices
        P = R.positive_roots
        self._pos = P
        self._npos = np.array(cover.n_positive, dtype=np.int64)
        # neg[w, b] : w^{-1} beta_b is negative
        inv_roots = np.einsum("bi,wij->wbj", P, self._mats)
        self._neg = (inv_roots @ R.rho2_check) < 0
        self.generators = [self._affine_reflection()] + [
            ((0,) * R.dim, self.W.index(R.reflections[i])) for i in range(R.rank)]
        self._decomp_cache: dict = {}
        self._len_cache: dict = {}

    # -- group layer -------------------------------------------------------
    def _affine_reflection(self):
        c, R = self.cover, self.cover.datum
        nsimp = c.n_simple
        heights = []
        for k, coords in enumerate(R.positive_root_coords):
            nb = c.n_positive[k]
            heights.append(sum(Fraction(int(ci) * ni, nb) for ci, ni in zip(coords, nsimp)))
        k = int(np.argmax([float(h) for h in heights]))
        coroot = c.n_positive[k] * R.positive_coroots[k]
        s = R.reflection_matrix(R.positive_coroots[k], R.positive_roots[k])
        return tuple(int(x) for x in coroot), self.W.index(s)

    def in_lattice(self, lam) -> bool:
        return self.cover.in_Y_Qn(lam)

    def mul_group(self, x, y):
        lam = np.array(x[0], dtype=np.int64) + self._mats[x[1]] @ np.array(y[0], dtype=np.int64)
        w = int(self.W.multiply(x[1], y[1]))
        return tuple(int(v) for v in lam), w

    def inverse_group(self, x):
        wi = int(self.W.inverse_index[x[1]])
        lam = -(self._mats[wi] @ np.array(x[0], dtype=np.int64))
        return tuple(int(v) for v in lam), wi

    def translation(self, lam):
        return tuple(int(v) for v in lam), 0

    def length(self, x) -> int:
        if x in self._len_cache:
            return self._len_cache[x]
        pair = self._pos @ np.array(x[0], dtype=np.int64)
        a, rem = np.divmod(pair, self._npos)
        if np.any(rem):
            raise ConfigurationError(f"{x[0]} is not in Y_(Q,n)")
        out = int(np.abs(a - self._neg[x[1]]).sum())
        self._len_cache[x] = out
        return out

    def decompose(self, x):
        """``(word, omega)`` with ``x = s_word[0] ... s_word[-1] * omega`` reduced."""
        if x in self._decomp_cache:
            return self._decomp_cache[x]
        word, cur = [], x
        while self.length(cur) > 0:
            lc = self.length(cur)
            for i, s in enumerate(self.generators):
                cand = self.mul_group(s, cur)
                if self.length(cand) < lc:
                    word.append(i)
                    cur = cand
                    break
            else:  # pragma: no cover - lengths always drop for some generator
                raise RuntimeError("no descent found")
        out = (tuple(word), cur)
        self._decomp_cache[x] = out
        return out

    # -- algebra layer -----------------------------------------------------
    def element(self, terms=None) -> "HeckeElt":
        return HeckeElt(self, terms or {})

    def one(self) -> "HeckeElt":
        return HeckeElt(self, {((0,) * self.cover.datum.dim, 0): 1})

    def T(self, x) -> "HeckeElt":
        """Basis element ``T_x`` for ``x = (lam, w)``."""
        x = (tuple(int(v) for v in x[0]), int(x[1]))
        self.length(x)  # validates lattice membership
        return HeckeElt(self, {x: 1})

    def T_simple(self, i: int) -> "HeckeElt":
        """``T_{s_i}``; index 0 is the affine reflection, ``1..r`` the finite ones."""
        return HeckeElt(self, {self.generators[i]: 1})

    def _times_generator(self, terms: dict, i: int) -> dict:
        s = self.generators[i]
        q = self.q
        out: dict = {}
        for x, c in terms.items():
            xs = self.mul_group(x, s)
            if self.length(xs) > self.length(x):
                out[xs] = out.get(xs, 0) + c
            else:
                out[x] = out.get(x, 0) + (q - 1) * c
                out[xs] = out.get(xs, 0) + q * c
        return out

    def _times_basis(self, terms: dict, y) -> dict:
        word, omega = self.decompose(y)
        for i in word:
            terms = self._times_generator(terms, i)
        return {self.mul_group(x, omega): c for x, c in terms.items()}

    def multiply(self, a: "HeckeElt", b: "HeckeElt") -> "HeckeElt":
        out: dict = {}
        for y, cy in b.terms.items():
            part = self._times_basis(dict(a.terms), y)
            for x, c in part.items():
                out[x] = out.get(x, 0) + c * cy
        return HeckeElt(self, out)

    def inverse_basis(self, x) -> "HeckeElt":
        """``T_x^{-1}`` from ``T_s^{-1} = q^{-1} T_s + (q^{-1} - 1)``."""
        word, omega = self.decompose(tuple(x))
        qi = self.scalars.inv(self.q)
        out = self.T(self.inverse_group(omega))
        for i in reversed(word):
            s_inv = HeckeElt(self, {self.generators[i]: qi, self.one_key: qi - 1})
            out = out * s_inv
        return out

    @property
    def one_key(self):
        return (0,) * self.cover.datum.dim, 0

    def theta(self, y) -> "HeckeElt":
        """Normalised Bernstein element ``Theta_y`` for ``y`` in ``Y_{Q,n}``.

        ``y = y1 - y2`` with ``y1``, ``y2`` dominant and
        ``Theta_y = q^{-l(t_y1)/2} T_{t_y1} (q^{-l(t_y2)/2} T_{t_y2})^{-1}``.
        """
        y = np.array(y, dtype=np.int64)
        if not self.in_lattice(y):
            raise ConfigurationError(f"{y.tolist()} is not in Y_(Q,n)")
        R = self.cover.datum
        reg = self.cover.modified_positive_coroots.sum(axis=0)
        pair_y = R.simple_roots @ y
        pair_reg = R.simple_roots @ reg
        k = max(0, max(-(-(-int(a)) // int(b)) for a, b in zip(pair_y, pair_reg)))
        y2 = k * reg
        y1 = y + y2
        t1, t2 = self.translation(y1), self.translation(y2)
        e2 = self.length(t2) - self.length(t1)
        out = self.T(t1) * self.inverse_basis(t2)
        return out.scale(self.scalars.sqrt_power(e2))


class HeckeElt:
    """Immutable element of :class:`IwahoriHecke`: a map ``(lam, w) -> scalar``."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: IwahoriHecke, terms: dict):
        sc = algebra.scalars
        self.algebra = algebra
        clean = {}
        for k, v in terms.items():
            v = sc.clean(v)
            if not sc.is_zero(v):
                clean[k] = v
        self.terms = clean

    def _check(self, other):
        if not isinstance(other, HeckeElt) or other.algebra is not self.algebra:
            raise ConfigurationError("Hecke elements from different algebras")

    def __add__(self, other):
        if not isinstance(other, HeckeElt):
            other = self.algebra.one().scale(other)
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return HeckeElt(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        return HeckeElt(self.algebra, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElt):
            self._check(other)
            return self.algebra.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, HeckeElt):
            other = self.algebra.one().scale(other)
        return (self - other).terms == {}

    def __hash__(self):
        return hash(frozenset(self.terms))

    def support(self):
        return sorted(self.terms)

    def to_json(self) -> dict:
        out = []
        for (lam, w), v in sorted(self.terms.items()):
            word = list(self.algebra.W.elements[w].word)
            out.append({"translation": list(lam), "weyl_word": word, "coeff": _scalar_json(v)})
        return {"terms": out}

    def __repr__(self):
        parts = [f"({v})*T[{list(lam)},{w}]" for (lam, w), v in sorted(self.terms.items())]
        return " + ".join(parts) or "0"


def _scalar_json(v):
    if isinstance(v, Cyclo):
        return v.to_json()
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, int):
        return v
    return str(v)


def hecke_mul(a: HeckeElt, b: HeckeElt) -> HeckeElt:
    """Product in the Iwahori-Matsumoto basis.

    Examples
    --------
    >>> from coverhecke.cover import make_cover
    >>> H = IwahoriHecke(make_cover("A", 1, 1), q=3)
    >>> s = H.T_simple(1)
    >>> hecke_mul(s, s) == 2 * s + 3
    True
    """
    return a * b


def bernstein_theta(algebra: IwahoriHecke, y) -> HeckeElt:
    """Normalised Bernstein element ``Theta_y`` (see :meth:`IwahoriHecke.theta`)."""
    return algebra.theta(y)


# ---------------------------------------------------------------------------
# torus words in the cover
# ---------------------------------------------------------------------------

def _eps_exponent(cover: CoverSpec, q: int) -> int:
    """``(varpi, varpi)_n`` as an exponent of ``zeta_n``."""
    F = Fq.get(q)
    w = TameElement.uniformizer(F)
    return hilbert_symbol(w, w, q, cover.n)


def canonicalize_torus_word(cover: CoverSpec, q: int, word):
    """Normal form ``zeta_n**k * s_{y'}`` of a product of torus elements.

    ``word`` is a sequence of factors:

    * ``("s", y)``: the section value ``s_y``;
    * ``("s_inv", y)``: the inverse ``s_y^{-1} = eps^{Q(y)} s_{-y}``;
    * ``("h", i, j)``: ``h_{alpha_i}(varpi^j) = s_{j alpha_i^vee}``.

    Products use ``s_{y1} s_{y2} = eps^{D(y1, y2)} s_{y1+y2}``.

    Returns
    -------
    (k, y) : the exponent ``k`` in ``Z/n`` and the coordinate tuple ``y``.

    Examples
    --------
    >>> from coverhecke.cover import make_cover
    >>> c = make_cover("A", 1, 4, Q=-1)
    >>> canonicalize_torus_word(c, 5, [("s", [1]), ("h", 0, 1)])
    (2, (2,))
    """
    e = _eps_exponent(cover, q)
    n = cover.n
    R = cover.datum
    cur = np.zeros(R.dim, dtype=np.int64)
    k = 0
    for f in word:
        if f[0] == "s":
            y = np.asarray(f[1], dtype=np.int64)
        elif f[0] == "s_inv":
            y = -np.asarray(f[1], dtype=np.int64)
            k += e * cover.Q_form(y)
        elif f[0] == "h":
            y = int(f[2]) * R.simple_coroots[int(f[1])]
        else:
            raise ConfigurationError(f"unknown torus factor {f[0]!r}")
        k += e * cover.D_form(cur, y)
        cur = cur + y
    return k % n, tuple(int(v) for v in cur)


# ---------------------------------------------------------------------------
# finite Gelfand-Graev module
# ---------------------------------------------------------------------------

class FiniteGG:
    """Finite Gelfand-Graev module ``c(chi) . T_alpha = g_alpha(psi, chi) c(w chi)``.

    Characters of ``T(F_q) = Y (x) F_q^x`` are row vectors ``lam`` in
    ``X / (q-1) X``: ``chi_lam(y(u)) = zeta_{q-1}**(<lam, y> dlog u)``.
    """

    def __init__(self, cover: CoverSpec, q: int):
        if (q - 1) % cover.n:
            raise ConfigurationError(f"n = {cover.n} must divide q - 1 = {q - 1}")
        self.cover = cover
        self.q = int(q)
        R = cover.datum
        m = self.q - 1
        grids = np.array(list(itertools.product(range(m), repeat=R.dim)), dtype=np.int64)
        self.characters = [tuple(int(x) for x in row) for row in grids]
        self._index = {c: i for i, c in enumerate(self.characters)}

    def reflect(self, lam, i: int):
        s = self.cover.datum.reflections[i]
        return tuple(int(x) % (self.q - 1) for x in np.asarray(lam) @ s)

    def gauss(self, lam, i: int) -> Cyclo:
        """``g_alpha(psi, chi) = sum_u psi(u) chi(h_{-alpha}(u))``."""
        pair = int(np.asarray(lam) @ self.cover.datum.simple_coroots[i])
        return _gauss(self.q, self.q - 1, -pair)

    def act_T(self, vec: dict, i: int) -> dict:
        out: dict = {}
        for lam, c in vec.items():
            tgt = self.reflect(lam, i)
            out[tgt] = out.get(tgt, 0) + c * self.gauss(lam, i)
        return {k: v for k, v in out.items() if v != 0}

    def orbits(self):
        """W-orbits on characters (lists of character tuples)."""
        seen, out = set(), []
        r = self.cover.datum.rank
        for lam in self.characters:
            if lam in seen:
                continue
            orb, stack = {lam}, [lam]
            while stack:
                cur = stack.pop()
                for i in range(r):
                    nxt = self.reflect(cur, i)
                    if nxt not in orb:
                        orb.add(nxt)
                        stack.append(nxt)
            seen |= orb
            out.append(sorted(orb))
        return out

    def phi(self, y):
        """Character ``phi(y) = [s_y, -]`` restricted to ``T(O)``.

        ``phi(y)(y'(u)) = (varpi, u)_n^{B(y, y')}``, and
        ``(varpi, u)_n = zeta_n^{-dlog u}``.
        """
        m, n = self.q - 1, self.cover.n
        lam = -(self.cover.B @ np.asarray(y, dtype=np.int64)) * (m // n)
        return tuple(int(x) % m for x in lam)

    def is_irreducible(self, orbit) -> bool:
        """Exhaustive invariant-subspace search on one orbit block.

        The idempotents ``c(chi)`` act diagonally with distinct characters,
        so every submodule is spanned by a subset of the basis; all proper
        nonempty subsets are tested for ``T_alpha``-stability.
        """
        orbit = list(orbit)
        r = self.cover.datum.rank
        for size in range(1, len(orbit)):
            for sub in itertools.combinations(orbit, size):
                subset = set(sub)
                if all(set(self.act_T({lam: 1}, i)) <= subset for lam in sub for i in range(r)):
                    return False
        return True

    def decomposition(self):
        """Per-orbit records ``{"orbit", "dim", "trivial", "sign_module"}``."""
        out = []
        r = self.cover.datum.rank
        zero = tuple(0 for _ in range(self.cover.datum.dim))
        for orb in self.orbits():
            rec = {"orbit": [list(x) for x in orb], "dim": len(orb), "trivial": zero in orb}
            if len(orb) == 1:
                rec["sign_module"] = all(self.act_T({orb[0]: 1}, i) == {orb[0]: -1} for i in range(r))
            out.append(rec)
        return out


@lru_cache(maxsize=None)
def _gauss(q, n, k):
    return _ConcreteScalars.clean(gauss_sum(q, n, k % n))


def finite_gg(cover: CoverSpec, q: int) -> FiniteGG:
    """Finite Gelfand-Graev module of ``T(F_q)``; see :class:`FiniteGG`."""
    return FiniteGG(cover, q)


# ---------------------------------------------------------------------------
# Iwahori-level Gelfand-Graev module on C[Y]
# ---------------------------------------------------------------------------

class GGVector(dict):
    """Finitely supported vector ``{y: coeff}`` in the module on ``C[Y]``."""

    @classmethod
    def basis(cls, y) -> "GGVector":
        return cls({tuple(int(v) for v in y): 1})

    def cleaned(self) -> "GGVector":
        return GGVector({k: v for k, v in self.items() if v != 0})

    def __add__(self, other):
        out = GGVector(self)
        for k, v in other.items():
            out[k] = out.get(k, 0) + v
        return out.cleaned()

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "GGVector":
        return GGVector({k: c * v for k, v in self.items()}).cleaned()

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values())

    def to_json(self):
        return [{"y": list(k), "coeff": _scalar_json(v)} for k, v in sorted(self.items())]


class GGModule:
    """The ``H_I``-module on ``C[Y]`` attached to a cover and residue field size.

    ``e_y . Theta_z = eps^{D(y, z)} e_{y+z}`` for ``z`` in ``Y_{Q,n}``, and with
    ``m = <alpha, y>``

    ``e_y . T_alpha = g_alpha(psi, phi(y)) eps^{B(y, a) - m D(y, a)} e_{w_alpha y}
    + sgn (q - 1) sum_j eps^{j Q(a) + j D(y, a)} e_{y + j a}``

    where ``a = alpha^vee``, ``j`` runs over multiples of ``n_alpha`` in
    ``[1 - m, 0]`` (sign ``+``) when ``m > 0`` and in ``[1, -m]`` (sign ``-``)
    when ``m < 0``.  The Gauss sum is ``gauss_sum(q, n, B(y, alpha^vee))``.

    Parameters
    ----------
    cover : CoverSpec
    q : int
        Residue field size with ``n | q - 1``.
    convention : {"derived", "printed"}
        Sign of the ``m < 0`` correction.  ``"derived"`` (``-``) follows
        from rearranging the Bernstein relation; ``"printed"`` (``+``) is
        kept for comparison and fails the quadratic relation.
    """

    def __init__(self, cover: CoverSpec, q: int, convention: str = "derived"):
        if (q - 1) % cover.n:
            raise ConfigurationError(f"n = {cover.n} must divide q - 1 = {q - 1}")
        if convention not in ("derived", "printed"):
            raise ConfigurationError("convention must be 'derived' or 'printed'")
        self.cover = cover
        self.q = int(q)
        self.n = cover.n
        # "printed" keeps a +(q-1) coefficient on the <alpha, y> < 0 branch;
        # it exists only to show that this alternative fails the relations
        self.convention = convention
        self.eps_exp = _eps_exponent(cover, self.q)
        self.eps = -1 if self.eps_exp else 1
        self._zeta = [Cyclo.root(self.n, k) if k else 1 for k in range(self.n)]
        R = cover.datum
        self._coroots = R.simple_coroots
        self._roots = R.simple_roots
        self._T_cache: dict = {}

    def _root_of_unity(self, k: int):
        v = self._zeta[k % self.n]
        if isinstance(v, Cyclo) and v.is_rational():
            return int(v.to_fraction())
        return v

    def weyl_conjugate(self, y, i: int):
        """``w_alpha(-1) . s_y = eps^{B(y, a)} s_y h_alpha(varpi^{-m})`` in normal form."""
        c = self.cover
        a = self._coroots[i]
        m = int(self._roots[i] @ np.asarray(y))
        k0 = self.eps_exp * c.B_form(y, a)
        k1, y2 = canonicalize_torus_word(c, self.q, [("s", y), ("h", i, -m)])
        return (k0 + k1) % self.n, y2

    def gauss(self, y, i: int):
        k = self.cover.B_form(y, self._coroots[i])
        return _gauss(self.q, self.n, k)

    def T_basis(self, y, i: int) -> GGVector:
        key = (tuple(y), i)
        if key in self._T_cache:
            return self._T_cache[key]
        c, n = self.cover, self.n
        y = np.asarray(y, dtype=np.int64)
        a = self._coroots[i]
        m = int(self._roots[i] @ y)
        na = c.n_simple[i]
        k_main, y_main = self.weyl_conjugate(y, i)
        out = GGVector({y_main: self.gauss(y, i) * self._root_of_unity(k_main)})
        if m > 0:
            js, sign = range(1 - m, 1), 1
        elif m < 0:
            js, sign = range(1, -m + 1), (-1 if self.convention == "derived" else 1)
        else:
            js, sign = (), 0
        Qa = c.Q_form(a)
        for j in js:
            if j % na:
                continue
            k, yj = canonicalize_torus_word(c, self.q, [("s", y), ("h", i, j)])
            k = (k + self.eps_exp * j * Qa) % n
            out = out + GGVector({yj: sign * (self.q - 1) * self._root_of_unity(k)})
        self._T_cache[key] = out
        return out

    def T(self, vec: GGVector, i: int) -> GGVector:
        out = GGVector()
        for y, v in vec.items():
            out = out + self.T_basis(y, i).scale(v)
        return out

    def Theta(self, vec: GGVector, z) -> GGVector:
        z = np.asarray(z, dtype=np.int64)
        if not self.cover.in_Y_Qn(z):
            raise ConfigurationError(f"{z.tolist()} is not in Y_(Q,n)")
        out = GGVector()
        for y, v in vec.items():
            k, y2 = canonicalize_torus_word(self.cover, self.q, [("s", y), ("s", z)])
            out[y2] = out.get(y2, 0) + v * self._root_of_unity(k)
        return out.cleaned()

    def T_word(self, vec: GGVector, word) -> GGVector:
        for i in word:
            vec = self.T(vec, i)
        return vec

    def Theta_normal(self, y, i: int, j: int):
        """``Theta_{s_y h_alpha(varpi^j)}`` as ``(eps exponent, z)``."""
        return canonicalize_torus_word(self.cover, self.q, [("s", y), ("h", i, j)])

    def Theta_scaled(self, vec, kz):
        k, z = kz
        return self.Theta(vec, z).scale(self._root_of_unity(k))

    def component_key(self, y) -> int:
        return self.cover.X.encode(np.asarray(y, dtype=np.int64))


# ---------------------------------------------------------------------------
# relation verifiers
# ---------------------------------------------------------------------------

def _report(relation, module, checked, failure=None, **extra):
    out = {"relation": relation, "cover": module.cover.to_json(), "q": module.q,
           "convention": module.convention,
           "vectors_checked": checked, "status": "pass" if failure is None else "fail"}
    if failure is not None:
        out["counterexample"] = failure
    out.update(extra)
    return out


def _coxeter_order(R, i, j):
    a = int(R.cartan[i, j]) * int(R.cartan[j, i])
    return {0: 2, 1: 3, 2: 4, 3: 6}[a]


def default_window(cover: CoverSpec, radius: int = 2):
    """All ``y`` with coordinates in ``[-radius, radius]``."""
    dim = cover.datum.dim
    return [tuple(p) for p in itertools.product(range(-radius, radius + 1), repeat=dim)]


def _small_lattice_vectors(cover: CoverSpec):
    B = cover.Y_Qn_basis
    out = [tuple(int(v) for v in B[:, j]) for j in range(B.shape[1])]
    out += [tuple(-v for v in x) for x in out]
    if B.shape[1] > 1:
        out.append(tuple(int(v) for v in B[:, 0] - B[:, 1]))
    return out


def verify_gg_relations(module: GGModule, window=None, z_list=None, relations=None) -> list:
    """Check the Hecke relations as operator identities on ``window`` vectors.

    Relations: ``quadratic`` ``(T - q)(T + 1) = 0``; ``braid`` per bond;
    ``bernstein`` (the Bernstein identity in the module form
    ``Theta_z T - T Theta_{w(-1).s_z} = sgn (q-1) sum_j Theta_{s_z h(varpi^j)}``);
    ``theta`` (``Theta_{z1} Theta_{z2} = eps^{D(z1,z2)} Theta_{z1+z2}``).
    Returns one JSON-ready report per relation.
    """
    c = module.cover
    R = c.datum
    window = default_window(c) if window is None else [tuple(int(v) for v in y) for y in window]
    z_list = _small_lattice_vectors(c) if z_list is None else [tuple(int(v) for v in z) for z in z_list]
    relations = relations or ("quadratic", "braid", "bernstein", "theta")
    q = module.q
    reports = []
    r = R.rank
    for rel in relations:
        failure = None
        checked = 0
        for y in window:
            e = GGVector.basis(y)
            if rel == "quadratic":
                for i in range(r):
                    t1 = module.T(e, i)
                    lhs = module.T(t1, i)
                    rhs = t1.scale(q - 1) + e.scale(q)
                    if not (lhs - rhs).is_zero():
                        failure = {"y": list(y), "alpha": i}
                        break
            elif rel == "braid":
                for i, j in itertools.combinations(range(r), 2):
                    m = _coxeter_order(R, i, j)
                    w1 = [i, j] * (m // 2) + ([i] if m % 2 else [])
                    w2 = [j, i] * (m // 2) + ([j] if m % 2 else [])
                    if not (module.T_word(e, w1) - module.T_word(e, w2)).is_zero():
                        failure = {"y": list(y), "bond": [i, j]}
                        break
            elif rel == "bernstein":
                for i in range(r):
                    for z in z_list:
                        if not _bernstein_holds(module, e, z, i):
                            failure = {"y": list(y), "alpha": i, "z": list(z)}
                            break
                    if failure:
                        break
            elif rel == "theta":
                for z1 in z_list:
                    for z2 in z_list:
                        lhs = module.Theta(module.Theta(e, z1), z2)
                        zz = tuple(a + b for a, b in zip(z1, z2))
                        k = module.eps_exp * c.D_form(z1, z2)
                        rhs = module.Theta(e, zz).scale(module._root_of_unity(k))
                        if not (lhs - rhs).is_zero():
                            failure = {"y": list(y), "z1": list(z1), "z2": list(z2)}
                            break
                    if failure:
                        break
            else:
                raise ConfigurationError(f"unknown relation {rel!r}")
            checked += 1
            if failure:
                break
        reports.append(_report(rel, module, checked, failure))
    return reports


def _bernstein_holds(module: GGModule, e: GGVector, z, i: int) -> bool:
    c = module.cover
    z = np.asarray(z, dtype=np.int64)
    m = int(c.datum.simple_roots[i] @ z)
    na = c.n_simple[i]
    # v . Theta_z . T   and   v . T . Theta_{w(-1).s_z}
    a = module.T(module.Theta(e, z), i)
    kz = module.weyl_conjugate(z, i)
    b = module.Theta_scaled(module.T(e, i), kz)
    if m > 0:
        js, sign = range(1 - m, 1), 1
    elif m < 0:
        js, sign = range(1, -m + 1), -1
    else:
        js, sign = (), 0
    rhs = GGVector()
    Qa = c.Q_form(c.datum.simple_coroots[i])
    for j in js:
        if j % na:
            continue
        k, zj = module.Theta_normal(z, i, j)
        k = (k + module.eps_exp * j * Qa) % c.n
        rhs = rhs + module.Theta(e, zj).scale(sign * (module.q - 1) * module._root_of_unity(k))
    return ((a - b) - rhs).is_zero()


# ---------------------------------------------------------------------------
# orbit components
# ---------------------------------------------------------------------------

def orbit_component(module: GGModule, orbit: OrbitRecord, window=None) -> dict:
    """Invariance of the ``O``-component under all operators on a window."""
    c = module.cover
    keys = set(int(k) for k in orbit.elements)
    window = default_window(c) if window is None else window
    members = [y for y in window if module.component_key(y) in keys]
    z_list = _small_lattice_vectors(c)
    failure = None
    for y in members:
        e = GGVector.basis(y)
        images = [module.T(e, i) for i in range(c.datum.rank)] + [module.Theta(e, z) for z in z_list]
        for img in images:
            bad = [list(k) for k in img if module.component_key(k) not in keys]
            if bad:
                failure = {"y": list(y), "escapes_to": bad[0]}
                break
        if failure:
            break
    return _report("orbit_invariance", module, len(members), failure,
                   orbit_rep=[int(v) for v in orbit.rep])


def _dominant_conjugate(c: CoverSpec, y):
    R = c.datum
    y = np.asarray(y, dtype=np.int64)
    while True:
        pair = R.simple_roots @ y
        bad = np.flatnonzero(pair < 0)
        if not len(bad):
            return y
        y = R.reflections[int(bad[0])] @ y


def _splitting_lift(c, orbit):
    wit = orbit.witness if orbit.splitting else None
    if wit is None:
        ok, wit = is_splitting(orbit)
        if not ok:
            raise PreconditionError("orbit is not splitting")
    return _dominant_conjugate(c, wit)


def compare_induced(module: GGModule, orbit: OrbitRecord) -> dict:
    """Compare the ``O``-component with ``eps_y (x)_{H_{W_y}} H_I``.

    For a dominant splitting lift ``y`` the checks are: (b) ``e_y`` is a
    ``(-1)``-eigenvector of ``T_alpha`` for each simple ``w_alpha`` fixing
    ``y``; (c) the vectors ``e_y . T_{w_j}`` for the minimal coset
    representatives of ``W_y \\ W`` form an ``A``-basis of the component.
    (c) is certified by the matrix of Laurent coefficients against the
    basis ``e_{w_j^{-1} y}`` being triangular for the Bruhat order with
    monomial diagonal, hence invertible over ``A = C[Y_{Q,n}]``.
    """
    c = module.cover
    R = c.datum
    W = R.weyl_group
    y = _splitting_lift(c, orbit)
    J = [i for i in range(R.rank) if int(R.simple_roots[i] @ y) == 0]
    e = GGVector.basis(y)
    failure = None
    for i in J:
        if not (module.T(e, i) + e).is_zero():
            failure = {"eigenvector": False, "alpha": i}
    # minimal representatives of W_J \ W: inverses of minimal reps of W / W_J
    reps = [w.inverse() for w in W.min_coset_reps(J)]
    reps.sort(key=lambda w: w.length)
    targets = [w.inverse().act(y) for w in reps]
    tkeys = [module.component_key(t) for t in targets]
    if len(set(tkeys)) != len(reps) or len(reps) != orbit.size:
        failure = failure or {"coset_count": len(reps), "orbit_size": orbit.size}
    diagonal = []
    if failure is None:
        for jdx, w in enumerate(reps):
            v = module.T_word(e, w.word)
            row: dict = {}
            for yy, coeff in v.items():
                k = tkeys.index(module.component_key(yy)) if module.component_key(yy) in tkeys else None
                if k is None:
                    failure = {"escapes": list(yy)}
                    break
                row.setdefault(k, []).append((yy, coeff))
            if failure:
                break
            for k in row:
                if k != jdx and not W.bruhat_leq(reps[k], w):
                    failure = {"not_triangular": [jdx, k]}
            diag = row.get(jdx, [])
            if len(diag) != 1:
                failure = failure or {"diagonal_not_monomial": jdx}
            else:
                yy, coeff = diag[0]
                diagonal.append({"rep_word": list(w.word), "shift": [int(v) for v in np.subtract(yy, targets[jdx])],
                                 "coeff": _scalar_json(coeff)})
            if failure:
                break
    out = _report("compare_induced", module, len(reps), failure,
                  lift=[int(v) for v in y], stabilizer_simple=J,
                  free=orbit.free, trivial=orbit.trivial, diagonal=diagonal)
    if orbit.free and failure is None:
        out["free_rank_one"] = _free_rank_one(module, y)
    return out


def _free_rank_one(module: GGModule, y, box: int = 1) -> bool:
    """``h -> e_y . h`` is injective on ``{T_w Theta_z : w in W, z in a box}``."""
    c = module.cover
    W = c.datum.weyl_group
    B = c.Y_Qn_basis
    k = B.shape[1]
    zs = [B @ np.array(t, dtype=np.int64) for t in itertools.product(range(-box, box + 1), repeat=k)]
    e = GGVector.basis(y)
    vecs = []
    for w in W:
        v = module.T_word(e, w.word)
        vecs.extend(module.Theta(v, z) for z in zs)
    keys = sorted({yy for v in vecs for yy in v})
    col = {yy: j for j, yy in enumerate(keys)}
    M = np.zeros((len(vecs), len(keys)), dtype=complex)
    for r_, v in enumerate(vecs):
        for yy, coeff in v.items():
            M[r_, col[yy]] = complex(coeff)
    return int(np.linalg.matrix_rank(M, tol=1e-8)) == len(vecs)


# ---------------------------------------------------------------------------
# SL_2 special element
# ---------------------------------------------------------------------------

def sl2_special(cover: CoverSpec, q: int, window_radius: int = 3) -> dict:
    """``h = T_alpha Theta_{-n* alpha^vee}`` on the ``O_{n*/2}`` component.

    Verifies ``h^2 = q`` on every window vector of the component and reports
    the eigenvalue of ``q^{-1/2} h`` on ``e_{-n* alpha^vee / 2}``.
    """
    R = cover.datum
    if R.cartan_type != "A" or R.rank != 1 or R.flavor == "GL":
        raise PreconditionError("sl2_special needs an SL_2 cover")
    B = int(cover.B[0, 0])
    n_star = cover.n // math.gcd(cover.n, B)
    if n_star % 2:
        raise PreconditionError(f"n* = {n_star} is odd")
    M = GGModule(cover, q)
    shift = (-n_star,)

    def h(v):
        return M.Theta(M.T(v, 0), shift)

    half = n_star // 2
    ys = [(half + n_star * k,) for k in range(-window_radius, window_radius + 1)]
    failure = None
    for y in ys:
        e = GGVector.basis(y)
        if not (h(h(e)) - e.scale(q)).is_zero():
            failure = {"y": list(y)}
            break
    base = GGVector.basis((-half,))
    img = h(base)
    eigen = None
    if set(img) == {(-half,)}:
        eigen = img[(-half,)]
    rq = sqrt_q(q)
    normalized = None if eigen is None else _ConcreteScalars.clean(eigen / rq)
    g = M.gauss((-half,), 0)
    g_norm = _ConcreteScalars.clean(g / rq)
    out = _report("sl2_special", M, len(ys), failure, n_star=n_star)
    out["eigenvector"] = eigen is not None
    out["eigenvalue_normalized"] = _scalar_json(normalized) if normalized is not None else None
    out["eigenvalue_squared"] = _scalar_json(_ConcreteScalars.clean(normalized * normalized)) if normalized is not None else None
    out["gauss_normalized"] = _scalar_json(g_norm)
    if normalized is not None:
        ratio = Fraction(normalized) / g_norm if isinstance(g_norm, int) else normalized / g_norm
        out["eigen_over_gauss"] = _scalar_json(_ConcreteScalars.clean(ratio))
    if eigen is None or normalized * normalized != 1:
        out["status"] = "fail"
    return out
