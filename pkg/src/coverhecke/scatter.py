"""
Scattering matrices of intertwining operators on unramified principal series.

A genuine unramified character ``chi`` of ``A~ = Z(T~) T(O)`` is fixed by its
values on ``s_b`` for a basis ``b`` of ``Y_{Q,n}`` and by ``chi(zeta) = zeta``.
Its Weyl transports ``(w chi)(a) = chi(w_dot^{-1} a w_dot)`` are evaluated in
the group model of :mod:`coverhecke.propp`, so the ``mu_n`` bookkeeping of
``s_y s_y' = (varpi, varpi)_n^{D(y, y')} s_{y+y'}`` and of Weyl conjugation is
never done by hand.

For a simple reflection, with ``a = <y + z*, alpha>``:

* ``tau^1(s_y, s_y) = (1 - 1/q) chi_alpha^k / (1 - chi_alpha)``,
  ``k = ceil((1 + a) / n_alpha)``;
* ``tau^2(s_{y'}, s_y) = (-1, varpi)_n^{a D(y, alpha^vee)} g(a Q(alpha^vee)) / q``,
  ``y' = w_alpha[y]_{z*} = y - a alpha^vee``;

where ``chi_alpha = chi(s_{n_alpha alpha^vee})`` and ``g(k)`` is the Gauss sum
of :func:`coverhecke.exact.gauss_sum`.  Rows ``y'`` outside the chosen
representatives are moved back with ``tau(s_{y'} a', s_y) = (w chi)(a')^{-1} tau(s_{y'}, s_y)``.

Matrices are indexed ``[row y', column y]`` and compose by
``tau(w1 w2, chi) = tau(w1, w2 chi) tau(w2, chi)``.
"""

from __future__ import annotations

import cmath
import itertools
import math
import random
from fractions import Fraction

import numpy as np

from .cover import CoverSpec, make_cover
from ._intlinalg import rational_inverse
from .exact import ConfigurationError, Cyclo, gauss_sum
from .orbits import as_coweight, enumerate_orbits
from .propp import ProPGroup

__all__ = [
    "PoleError",
    "ChiPoint",
    "ScatterMatrix",
    "tau",
    "rank_one_matrix",
    "scattering_matrix",
    "reduced_words",
    "support_check",
    "functional_equation_check",
    "cocycle_check",
    "random_unitary_chi",
    "random_root_of_unity_chi",
]

TOL = 1e-9


class PoleError(ArithmeticError):
    """``chi_alpha = 1``: the rank-one operator has a pole."""


# ---------------------------------------------------------------------------
# scalar backends
# ---------------------------------------------------------------------------

class _Exact:
    name = "exact"

    @staticmethod
    def root(n, k):
        k %= n
        if k == 0:
            return Fraction(1)
        if 2 * k == n:
            return Fraction(-1)
        return Cyclo.root(n, k)

    @staticmethod
    def convert(x):
        return x

    @staticmethod
    def is_zero(x):
        return x == 0

    @staticmethod
    def close(a, b):
        return a == b

    @staticmethod
    def clean(x):
        if isinstance(x, Cyclo) and x.is_rational():
            x = x.to_fraction()
        if isinstance(x, int):
            return Fraction(x)
        return x


class _Float:
    name = "float"

    @staticmethod
    def root(n, k):
        return cmath.exp(2j * math.pi * (k % n) / n)

    @staticmethod
    def convert(x):
        return complex(x)

    @staticmethod
    def is_zero(x):
        return abs(x) < TOL

    @staticmethod
    def close(a, b):
        return abs(complex(a) - complex(b)) < TOL * max(1.0, abs(complex(a)), abs(complex(b)))

    @staticmethod
    def clean(x):
        return complex(x)


# ---------------------------------------------------------------------------
# characters
# ---------------------------------------------------------------------------

class ChiPoint:
    """Genuine unramified character, optionally transported by a Weyl lift.

    Parameters
    ----------
    cover, q :
        The cover and residue field size (``n | q - 1``).
    values : sequence
        ``chi(s_b)`` for the columns ``b`` of ``cover.Y_Qn_basis``.  Entries
        that are :class:`Cyclo` (or ``(N, k)`` pairs meaning ``zeta_N**k``)
        select the exact backend; complex numbers select the floating one.
    """

    def __init__(self, cover: CoverSpec, q: int, values, _conj=None, _group=None):
        self.cover = cover
        self.q = int(q)
        self.G = _group or ProPGroup(cover, q)
        vals = []
        exact = True
        for v in values:
            if isinstance(v, tuple):
                v = _Exact.root(*v)
            if isinstance(v, (complex, float)):
                exact = False
            vals.append(v)
        self.backend = _Exact if exact else _Float
        if exact:
            self.values = tuple(v if isinstance(v, Cyclo) else Fraction(v) for v in vals)
        else:
            self.values = tuple(complex(v) for v in vals)
        self.basis = [tuple(int(x) for x in col) for col in np.asarray(cover.Y_Qn_basis).T]
        self._coords = rational_inverse([list(b) for b in zip(*self.basis)])
        self.conj = _conj if _conj is not None else self.G.identity()
        self._cache: dict = {}

    @property
    def unitary(self) -> bool:
        return all(abs(abs(complex(v)) - 1) < TOL for v in self.values)

    def transport(self, w: int) -> "ChiPoint":
        """``w chi``, evaluated as ``a -> chi(w_dot^{-1} a w_dot)``."""
        G = self.G
        x = G.mul(G.element(0, None, w), self.conj)
        out = ChiPoint(self.cover, self.q, self.values, _conj=x, _group=G)
        out.backend = self.backend
        return out

    def _power(self, i, c):
        G = self.G
        b = G.element(0, (self.basis[i], (0,) * G.dim), 0)
        if c < 0:
            b, c = G.inverse(b), -c
        out = G.identity()
        for _ in range(c):
            out = G.mul(out, b)
        return out

    def _base(self, g):
        k, v, l, w = g
        if w != 0 or any(l):
            raise ConfigurationError("chi is evaluated on zeta * s_y only")
        if v not in self._cache:
            c = [sum(row[j] * v[j] for j in range(len(v))) for row in self._coords]
            if any(Fraction(x).denominator != 1 for x in c):
                raise ConfigurationError(f"{list(v)} is not in Y_Qn")
            c = [int(x) for x in c]
            G = self.G
            p = G.identity()
            val = 1
            for i, ci in enumerate(c):
                if ci:
                    p = G.mul(p, self._power(i, ci))
                    val = val * (self.values[i] ** ci if ci > 0 else 1 / (self.values[i] ** (-ci)))
            if p[1] != v:  # pragma: no cover
                raise AssertionError("basis decomposition failed")
            self._cache[v] = (p[0], val)
        kp, val = self._cache[v]
        return self.backend.clean(val * self.backend.root(self.G.n, k - kp))

    def __call__(self, g):
        """Value on a group element ``zeta^k s_y`` with ``y`` in ``Y_{Q,n}``."""
        G = self.G
        h = G.mul(G.mul(G.inverse(self.conj), g), self.conj)
        return self._base(h)

    def at(self, y, k: int = 0):
        return self(self.G.s_y(y, k))

    def chi_alpha(self, i: int):
        """``chi(h~_alpha(varpi^{n_alpha}))`` for simple root ``i``."""
        na = int(self.cover.n_simple[i])
        return self.at([na * int(x) for x in self.cover.datum.simple_coroots[i]])

    def to_json(self):
        return {"values": [str(v) for v in self.values], "backend": self.backend.name,
                "transport": list(self.G.key(self.conj))}


def random_unitary_chi(cover: CoverSpec, q: int, rng) -> ChiPoint:
    r = len(np.asarray(cover.Y_Qn_basis).T)
    return ChiPoint(cover, q, [cmath.exp(2j * math.pi * rng.random()) for _ in range(r)])


def random_root_of_unity_chi(cover: CoverSpec, q: int, rng, order: int = 7) -> ChiPoint:
    r = len(np.asarray(cover.Y_Qn_basis).T)
    return ChiPoint(cover, q, [(order, rng.randrange(order)) for _ in range(r)])


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

class ScatterMatrix:
    """Square matrix over the canonical representatives of ``X_{Q,n}``."""

    def __init__(self, reps, entries, backend, meta=None):
        self.reps = reps
        self.entries = entries  # list of rows
        self.backend = backend
        self.meta = meta or {}

    def __matmul__(self, other):
        N = len(self.reps)
        out = [[0] * N for _ in range(N)]
        for i in range(N):
            row = self.entries[i]
            for k in range(N):
                a = row[k]
                if self.backend.is_zero(a):
                    continue
                ok = other.entries[k]
                for j in range(N):
                    b = ok[j]
                    if not other.backend.is_zero(b):
                        out[i][j] = out[i][j] + a * b
        backend = _Float if _Float in (self.backend, other.backend) else _Exact
        return ScatterMatrix(self.reps, [[backend.clean(x) for x in r] for r in out], backend)

    def close(self, other) -> bool:
        backend = _Float if _Float in (self.backend, other.backend) else _Exact
        return all(backend.close(a, b) for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb))

    def support(self):
        return [(i, j) for i, r in enumerate(self.entries) for j, x in enumerate(r) if not self.backend.is_zero(x)]

    @classmethod
    def identity(cls, reps, backend):
        N = len(reps)
        return cls(reps, [[int(i == j) for j in range(N)] for i in range(N)], backend)

    def to_json(self):
        def enc(x):
            if isinstance(x, Cyclo):
                return x.to_json()
            if isinstance(x, complex):
                return [x.real, x.imag]
            return str(x)

        return {"reps": [list(map(int, r)) for r in self.reps],
                "entries": [[enc(x) for x in r] for r in self.entries], "meta": self.meta}

    def to_csv(self) -> str:
        lines = ["row,col,re,im"]
        for i, r in enumerate(self.entries):
            for j, x in enumerate(r):
                z = complex(x)
                lines.append(f"{i},{j},{z.real!r},{z.imag!r}")
        return "\n".join(lines) + "\n"


def _pair(root, v):
    return sum(int(a) * Fraction(x) for a, x in zip(root, v))


def _setup(cover):
    X = cover.X
    reps = [tuple(int(x) for x in r) for r in X.representatives()]
    index = {r: i for i, r in enumerate(reps)}
    return X, reps, index


def tau(cover: CoverSpec, i: int, chi: ChiPoint, zstar, y_row, y_col, part=None):
    """``tau(w_i, chi, s_{y_row}, s_{y_col})`` with ``y_row`` taken literally.

    ``part`` selects ``1`` or ``2`` for a single summand.
    """
    B = chi.backend
    q = chi.q
    n = cover.n
    R = cover.datum
    zs = as_coweight(cover, zstar)
    y = [int(x) for x in y_col]
    yr = [int(x) for x in y_row]
    alpha = R.simple_roots[i]
    av = [int(x) for x in R.simple_coroots[i]]
    a = _pair(alpha, [Fraction(u) + zz for u, zz in zip(y, zs)])
    if a.denominator != 1:
        raise ConfigurationError("z* is not a coweight")
    a = int(a)
    out = 0
    if part in (None, 1) and cover.in_Y_Qn([u - v for u, v in zip(yr, y)]):
        x = chi.chi_alpha(i)
        if B.close(x, 1):
            raise PoleError(f"chi_alpha = 1 for simple root {i}")
        na = int(cover.n_simple[i])
        k = -((-(1 + a)) // na)
        main = (1 - Fraction(1, q)) * (x ** k if k >= 0 else 1 / x ** (-k)) / (1 - x)
        # shift from s_{y_row} to s_y inside A~
        out = out + main * _row_shift(chi.transport(_simple_w(cover, i)), y, yr)
    yp = [u - a * c for u, c in zip(y, av)]
    if part in (None, 2) and cover.in_Y_Qn([u - v for u, v in zip(yr, yp)]):
        half = chi.G.half
        e = (a * cover.D_form(y, av) * half) % n
        g = B.convert(gauss_sum(q, n, a * cover.Q_form(av)))
        val = B.root(n, e) * g / q
        out = out + val * _row_shift(chi.transport(_simple_w(cover, i)), yp, yr)
    return B.clean(out)


def _simple_w(cover, i):
    return cover.datum.weyl_group.index(cover.datum.reflections[i])


def _row_shift(chi_w: ChiPoint, y_lit, y_row):
    """Factor turning ``tau(s_{y_lit}, .)`` into ``tau(s_{y_row}, .)``.

    ``s_{y_lit} = s_{y_row} a'`` with ``a' = zeta^{-k} s_d``; then
    ``tau(s_{y_row}, .) = (w chi)(a') tau(s_{y_lit}, .)``.
    """
    if list(y_lit) == list(y_row):
        return 1
    G = chi_w.G
    d = [u - v for u, v in zip(y_lit, y_row)]
    p = G.mul(G.s_y(y_row), G.s_y(d))
    return chi_w(G.s_y(d, -p[0]))


def rank_one_matrix(cover: CoverSpec, i: int, chi: ChiPoint, zstar=None) -> ScatterMatrix:
    """``[tau(w_i, chi, s_{y'}, s_y)]`` over canonical representatives."""
    X, reps, index = _setup(cover)
    N = len(reps)
    M = [[0] * N for _ in range(N)]
    for j, y in enumerate(reps):
        M[j][j] = tau(cover, i, chi, zstar, y, y, part=1)
        zs = as_coweight(cover, zstar)
        a = int(_pair(cover.datum.simple_roots[i], [Fraction(u) + zz for u, zz in zip(y, zs)]))
        yp = [u - a * int(c) for u, c in zip(y, cover.datum.simple_coroots[i])]
        r = tuple(int(x) for x in X.reduce(yp))
        M[index[r]][j] = chi.backend.clean(M[index[r]][j] + tau(cover, i, chi, zstar, r, y, part=2))
    return ScatterMatrix(reps, M, chi.backend, {"word": [i], "zstar": [str(x) for x in as_coweight(cover, zstar)]})


def scattering_matrix(cover: CoverSpec, word, chi: ChiPoint, zstar=None) -> ScatterMatrix:
    """``tau(w, chi)`` for ``w = s_{word[0]} ... s_{word[-1]}`` (reduced)."""
    R = cover.datum
    W = R.weyl_group
    _, reps, _ = _setup(cover)
    M = ScatterMatrix.identity(reps, chi.backend)
    cur = chi
    lengths = 0
    w = 0
    for i in reversed(list(word)):
        si = _simple_w(cover, i)
        M = rank_one_matrix(cover, i, cur, zstar) @ M
        cur = cur.transport(si)
        w = int(W.multiply(si, w))
        lengths += 1
    if W.elements[w].length != lengths:
        raise ConfigurationError("word is not reduced")
    M.meta = {"word": list(word), "zstar": [str(x) for x in as_coweight(cover, zstar)], "chi": chi.to_json()}
    return M


def reduced_words(cover: CoverSpec, w: int):
    """All reduced words of the Weyl element with index ``w``."""
    W = cover.datum.weyl_group
    r = cover.datum.rank
    simple = [_simple_w(cover, i) for i in range(r)]

    def rec(x):
        if W.elements[x].length == 0:
            return [()]
        out = []
        for i in range(r):
            y = int(W.multiply(simple[i], x))
            if W.elements[y].length < W.elements[x].length:
                out.extend((i,) + t for t in rec(y))
        return out

    return rec(w)


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

def _orbit_labels(cover, zstar):
    X, reps, index = _setup(cover)
    lab = {}
    for k, o in enumerate(enumerate_orbits(cover, zstar)):
        for e in o.elements:
            lab[int(e)] = k
    # orbit elements are indices into X.representatives()
    return [lab[j] for j in range(len(reps))]


def support_check(cover: CoverSpec, chi: ChiPoint, zstar=None) -> dict:
    """Rank-one matrices are supported on ``y' = y`` and ``y' = w_alpha[y]_{z*}`` only."""
    X, reps, index = _setup(cover)
    zs = as_coweight(cover, zstar)
    failure = None
    checked = 0
    for i in range(cover.datum.rank):
        M = rank_one_matrix(cover, i, chi, zstar)
        for j, y in enumerate(reps):
            a = int(_pair(cover.datum.simple_roots[i], [Fraction(u) + zz for u, zz in zip(y, zs)]))
            yp = [u - a * int(c) for u, c in zip(y, cover.datum.simple_coroots[i])]
            r = index[tuple(int(x) for x in X.reduce(yp))]
            allowed = {j, r}
            for row in range(len(reps)):
                nz = not chi.backend.is_zero(M.entries[row][j])
                if nz and row not in allowed:
                    failure = {"root": i, "col": list(y), "row": list(reps[row])}
                if row == r and r != j and not nz:
                    failure = {"root": i, "col": list(y), "missing": list(reps[row])}
            checked += 1
    return {"relation": "support", "status": "pass" if failure is None else "fail",
            "columns_checked": checked, "counterexample": failure}


def functional_equation_check(cover: CoverSpec, chi: ChiPoint, zstar=None) -> dict:
    """``tau(w_a, w_a chi) tau(w_a, chi) = c(x) c(1/x) I`` with ``c(x) = (1 - x/q)/(1 - x)``."""
    failure = None
    q = chi.q
    for i in range(cover.datum.rank):
        si = _simple_w(cover, i)
        M = rank_one_matrix(cover, i, chi.transport(si), zstar) @ rank_one_matrix(cover, i, chi, zstar)
        x = chi.chi_alpha(i)
        c = (1 - x / q) / (1 - x) * (1 - 1 / (x * q)) / (1 - 1 / x)
        target = ScatterMatrix.identity(M.reps, chi.backend)
        target.entries = [[chi.backend.clean(c if a == b else 0) for b in range(len(M.reps))] for a in range(len(M.reps))]
        if not M.close(target):
            failure = {"root": i}
    return {"relation": "functional_equation", "status": "pass" if failure is None else "fail",
            "counterexample": failure}


def _block_ok(M: ScatterMatrix, labels) -> bool:
    return all(labels[i] == labels[j] for i, j in M.support())


def cocycle_check(cover: CoverSpec, q: int, samples: int = 20, roots_of_unity: int = 5,
                  zstar=None, seed: int = 0) -> dict:
    """Products along all reduced words of ``w_G`` agree; blocks follow ``(W, z*)``-orbits."""
    if cover.datum.rank != 2:
        raise ConfigurationError("cocycle_check needs a rank-two datum")
    rng = random.Random(seed)
    W = cover.datum.weyl_group
    wG = max(range(len(W)), key=lambda k: W.elements[k].length)
    words = reduced_words(cover, wG)
    labels = _orbit_labels(cover, zstar)
    results = {"float": 0, "exact": 0, "skipped_poles": 0}
    failure = None
    block_ok = True
    plan = [("float", random_unitary_chi)] * samples + [("exact", random_root_of_unity_chi)] * roots_of_unity
    for kind, maker in plan:
        for _ in range(50):
            chi = maker(cover, q, rng)
            try:
                mats = [scattering_matrix(cover, wd, chi, zstar) for wd in words]
            except PoleError:
                results["skipped_poles"] += 1
                continue
            break
        else:
            raise PoleError("could not draw a regular character")
        for M in mats[1:]:
            if not M.close(mats[0]):
                failure = failure or {"backend": kind, "chi": chi.to_json()}
        for M in mats:
            block_ok = block_ok and _block_ok(M, labels)
        for i in range(cover.datum.rank):
            block_ok = block_ok and _block_ok(rank_one_matrix(cover, i, chi, zstar), labels)
        results[kind] += 1
    status = "pass" if failure is None and block_ok else "fail"
    return {"relation": "cocycle", "cover": cover.to_json(), "q": q,
            "zstar": [str(x) for x in as_coweight(cover, zstar)], "reduced_words": [list(w) for w in words],
            "samples": results, "block_diagonal": block_ok, "status": status, "counterexample": failure}
