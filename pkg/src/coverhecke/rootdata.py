"""
Root data and Weyl groups.

Lattices are coordinatised as follows.  ``Y`` (cocharacters) carries
integer column vectors; ``X`` (characters) carries row vectors, and the
pairing is the dot product.  Three flavours are supported:

``"sc"``
    ``Y`` has the simple coroots as basis.
``"adjoint"``
    ``Y`` has the fundamental coweights as basis.
``"GL"``
    Type ``A_{r-1}`` inside ``Z**r`` with ``alpha_i = e_i - e_{i+1}`` on both sides.

Simple roots are numbered as in Bourbaki.  Cartan entries are
``C[i, j] = <alpha_i, alpha_j^vee>``.
"""

from __future__ import annotations

import os
from collections import deque
from fractions import Fraction
from functools import cached_property

import numpy as np

from ._intlinalg import det_int, rational_inverse

__all__ = [
    "ResourceError",
    "cartan_matrix",
    "RootDatum",
    "WeylElt",
    "WeylGroup",
    "ExtAffineElt",
    "build_root_datum",
    "resource_bound",
]

DEFAULT_BOUND = 10 ** 6


class ResourceError(RuntimeError):
    """Raised when an enumeration would exceed the configured size bound."""


def resource_bound() -> int:
    """Upper bound on enumerated group/set sizes (``COVERHECKE_MAX_ELEMENTS``)."""
    try:
        return int(os.environ.get("COVERHECKE_MAX_ELEMENTS", DEFAULT_BOUND))
    except ValueError:
        return DEFAULT_BOUND


def _weyl_order(t, r):
    from math import factorial
    if t == "A":
        return factorial(r + 1)
    if t in "BC":
        return 2 ** r * factorial(r)
    if t == "D":
        return 2 ** (r - 1) * factorial(r)
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
            ("F", 4): 1152, ("G", 2): 12}[(t, r)]


def cartan_matrix(cartan_type: str, rank: int) -> np.ndarray:
    """Cartan matrix ``C[i, j] = <alpha_i, alpha_j^vee>`` (Bourbaki labelling)."""
    t, r = cartan_type.upper(), int(rank)
    valid = {"A": r >= 1, "B": r >= 2, "C": r >= 2, "D": r >= 4,
             "E": r in (6, 7, 8), "F": r == 4, "G": r == 2}
    if t not in valid or not valid[t]:
        raise ValueError(f"unsupported Cartan type {cartan_type}{rank}")
    C = 2 * np.eye(r, dtype=np.int64)
    if t in "ABC":
        for i in range(r - 1):
            C[i, i + 1] = C[i + 1, i] = -1
        if t == "B":
            C[r - 2, r - 1] = -2
        elif t == "C":
            C[r - 1, r - 2] = -2
    elif t == "D":
        for i in range(r - 2):
            C[i, i + 1] = C[i + 1, i] = -1
        C[r - 3, r - 1] = C[r - 1, r - 3] = -1
    elif t == "E":
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, r - 1)]
        for i, j in edges:
            C[i, j] = C[j, i] = -1
    elif t == "F":
        C[0, 1] = C[1, 0] = C[2, 3] = C[3, 2] = -1
        C[1, 2] = -2
        C[2, 1] = -1
    elif t == "G":
        C[0, 1] = -1
        C[1, 0] = -3
    return C


def _root_lengths(C):
    # squared lengths d with C[i,j] d_j = C[j,i] d_i, normalised so min d = 1
    r = len(C)
    d = [None] * r
    d[0] = Fraction(1)
    queue = [0]
    while queue:
        i = queue.pop()
        for j in range(r):
            if C[i, j] and d[j] is None:
                d[j] = d[i] * Fraction(int(C[j, i]), int(C[i, j]))
                queue.append(j)
    m = min(d)
    return [int(x / m) for x in d]


class WeylElt:
    """Element of a Weyl group, stored as its integer matrix on ``Y``."""

    __slots__ = ("matrix", "word", "length", "_key", "group")

    def __init__(self, matrix, word, length, group):
        self.matrix = matrix
        self.word = tuple(word)
        self.length = int(length)
        self.group = group
        self._key = matrix.tobytes()

    def __mul__(self, other):
        return self.group.element(self.matrix @ other.matrix)

    def inverse(self):
        return self.group.element(np.round(np.linalg.inv(self.matrix)).astype(np.int64))

    def act(self, y):
        """Linear action on a coordinate vector of ``Y``."""
        return self.matrix @ np.asarray(y, dtype=np.int64)

    def act_root(self, lam):
        """Contragredient action on a row vector of ``X``."""
        return np.asarray(lam) @ self.inverse().matrix

    def __eq__(self, other):
        return isinstance(other, WeylElt) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def is_identity(self):
        return self.length == 0

    def __repr__(self):
        w = "".join(f"s{i + 1}" for i in self.word) or "1"
        return f"WeylElt({w})"


class RootDatum:
    """Split reductive root datum of almost simple or ``GL_r`` type.

    Parameters
    ----------
    cartan_type : str
        One of ``A .. G``.
    rank : int
        Semisimple rank.
    flavor : {"sc", "adjoint", "GL"}
        Choice of cocharacter lattice.  ``"GL"`` requires type ``A`` and
        yields ``GL_{rank+1}``.
    """

    def __init__(self, cartan_type: str, rank: int, flavor: str = "sc"):
        self.cartan_type = cartan_type.upper()
        self.rank = int(rank)
        flavor = {"simply-connected": "sc", "simply_connected": "sc", "gl": "GL"}.get(flavor, flavor)
        if flavor not in ("sc", "adjoint", "GL"):
            raise ValueError(f"unknown flavor {flavor!r}")
        if flavor == "GL" and self.cartan_type != "A":
            raise ValueError("GL flavor requires type A")
        self.flavor = flavor
        C = cartan_matrix(self.cartan_type, self.rank)
        self.cartan = C
        r = self.rank
        if flavor == "sc":
            self.dim = r
            self.simple_coroots = np.eye(r, dtype=np.int64)
            self.simple_roots = C.copy()
        elif flavor == "adjoint":
            self.dim = r
            self.simple_roots = np.eye(r, dtype=np.int64)
            self.simple_coroots = C.T.copy()
        else:
            self.dim = r + 1
            E = np.zeros((r, r + 1), dtype=np.int64)
            for i in range(r):
                E[i, i], E[i, i + 1] = 1, -1
            self.simple_roots = E
            self.simple_coroots = E.copy()
        pair = self.simple_roots @ self.simple_coroots.T
        if not np.array_equal(pair, C):
            raise AssertionError("pairing does not reproduce the Cartan matrix")
        self.root_lengths = _root_lengths(C)
        self._build_roots()

    # -- roots ---------------------------------------------------------------
    def _build_roots(self):
        C, r = self.cartan, self.rank
        seen = {}
        queue = deque()
        for i in range(r):
            b = tuple(int(i == j) for j in range(r))
            seen[b] = b
            queue.append(b)
        while queue:
            b = queue.popleft()
            g = seen[b]
            for i in range(r):
                pb = sum(b[j] * C[j, i] for j in range(r))
                pg = sum(C[i, j] * g[j] for j in range(r))
                nb = tuple(b[j] - (pb if j == i else 0) for j in range(r))
                ng = tuple(g[j] - (pg if j == i else 0) for j in range(r))
                if nb not in seen:
                    seen[nb] = ng
                    queue.append(nb)
        pos = sorted((b for b in seen if all(x >= 0 for x in b)), key=lambda b: (sum(b), [-x for x in b]))
        self.positive_root_coords = np.array(pos, dtype=np.int64)
        self.positive_coroot_coords = np.array([seen[b] for b in pos], dtype=np.int64)
        self.positive_roots = self.positive_root_coords @ self.simple_roots
        self.positive_coroots = self.positive_coroot_coords @ self.simple_coroots
        self.rho2 = self.positive_roots.sum(axis=0)
        self.rho2_check = self.positive_coroots.sum(axis=0)

    @property
    def roots(self):
        return np.vstack([self.positive_roots, -self.positive_roots])

    @property
    def coroots(self):
        return np.vstack([self.positive_coroots, -self.positive_coroots])

    @property
    def num_roots(self) -> int:
        return 2 * len(self.positive_roots)

    def pairing(self, lam, y) -> int:
        return int(np.dot(lam, y))

    @cached_property
    def highest_root_coeffs(self) -> tuple:
        """Coefficients ``m_i`` of the highest root ``alpha^dagger`` in the simple roots."""
        return tuple(int(x) for x in self.positive_root_coords[-1])

    @property
    def highest_root(self):
        return self.positive_roots[-1]

    @cached_property
    def highest_coroot_coeffs(self) -> tuple:
        """Coefficients ``c_alpha^sharp`` of the highest coroot in the simple coroots."""
        i = int(np.argmax(self.positive_coroot_coords.sum(axis=1)))
        return tuple(int(x) for x in self.positive_coroot_coords[i])

    def coroot_of(self, root_coords):
        """Coroot (in ``Y``) of the positive root with the given simple-root coordinates."""
        b = tuple(int(x) for x in root_coords)
        for k, row in enumerate(self.positive_root_coords):
            if tuple(row) == b:
                return self.positive_coroots[k]
        raise KeyError(b)

    @cached_property
    def index_of_connection(self) -> int:
        """Index of the root lattice in the weight lattice, ``det C``."""
        return det_int(self.cartan)

    def is_long_coroot(self, k: int) -> bool:
        """Whether positive coroot ``k`` is long (its root is short)."""
        b = self.positive_root_coords[k]
        d = self._sq_len(b)
        return d == min(self.root_lengths) and len(set(self.root_lengths)) > 1

    def _sq_len(self, b):
        # squared length of root sum b_i alpha_i with the symmetrised form
        C, d = self.cartan, self.root_lengths
        r = self.rank
        tot = Fraction(0)
        for i in range(r):
            for j in range(r):
                tot += Fraction(int(b[i] * b[j] * C[i, j] * d[j]), 2)
        return tot

    def coroot_length_ratio(self, k: int) -> int:
        """``Q(beta^vee) / Q(short coroot)`` for positive coroot ``k``."""
        d = self._sq_len(self.positive_root_coords[k])
        return int(Fraction(max(self.root_lengths)) / d)

    # -- coweights -------------------------------------------------------------
    @cached_property
    def coweight_basis(self):
        """Basis of ``P = {y in Y (x) Q : <alpha, y> in Z}`` as rational columns.

        For the ``GL`` flavour the fundamental coweights ``e_1 + ... + e_i`` lie
        in ``Y`` and ``P`` is taken to be ``Y``.
        """
        if self.flavor == "GL":
            return [[Fraction(int(i == j)) for j in range(self.dim)] for i in range(self.dim)]
        return rational_inverse(self.simple_roots.tolist())

    def fundamental_coweight(self, i: int):
        """``omega_i^vee`` as a list of Fractions in ``Y`` coordinates."""
        if self.flavor == "GL":
            return [Fraction(int(k <= i)) for k in range(self.dim)]
        B = self.coweight_basis
        return [B[k][i] for k in range(self.dim)]

    def coweight(self, coeffs):
        """``sum a_i omega_i^vee`` as a Fraction vector in ``Y`` coordinates."""
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(coeffs):
            if a:
                w = self.fundamental_coweight(i)
                out = [x + a * y for x, y in zip(out, w)]
        return out

    def in_Y(self, v) -> bool:
        return all(Fraction(x).denominator == 1 for x in v)

    @cached_property
    def rho_check(self):
        """Half the sum of positive coroots, as Fractions in ``Y`` coordinates."""
        return [Fraction(int(x), 2) for x in self.rho2_check]

    # -- Weyl group ------------------------------------------------------------
    @cached_property
    def reflections(self):
        """Simple reflections ``s_i = I - alpha_i^vee alpha_i`` acting on ``Y``."""
        out = []
        for i in range(self.rank):
            M = np.eye(self.dim, dtype=np.int64) - np.outer(self.simple_coroots[i], self.simple_roots[i])
            M.setflags(write=False)
            out.append(M)
        return out

    def reflection_matrix(self, coroot, root):
        return np.eye(self.dim, dtype=np.int64) - np.outer(coroot, root)

    @property
    def weyl_order(self) -> int:
        return _weyl_order(self.cartan_type, self.rank)

    @cached_property
    def weyl_group(self) -> "WeylGroup":
        return WeylGroup(self)

    def __repr__(self):
        return f"RootDatum({self.cartan_type}{self.rank}, {self.flavor})"

    def to_json(self):
        return {"type": self.cartan_type, "rank": self.rank, "flavor": self.flavor}


class WeylGroup:
    """The Weyl group of a root datum as an explicit list of matrices.

    Enumeration is by breadth-first search on words, so ``elements`` is
    sorted by length and every element carries a reduced word.
    """

    def __init__(self, datum: RootDatum, bound: int | None = None):
        self.datum = datum
        bound = resource_bound() if bound is None else bound
        if datum.weyl_order > bound:
            raise ResourceError(
                f"|W({datum.cartan_type}{datum.rank})| = {datum.weyl_order} exceeds bound {bound}")
        self._index = {}
        self.elements = []
        I = np.eye(datum.dim, dtype=np.int64)
        I.setflags(write=False)
        self._add(I, (), 0)
        frontier = [self.elements[0]]
        S = datum.reflections
        while frontier:
            nxt = []
            for w in frontier:
                for i, s in enumerate(S):
                    # first visit in BFS order is along a reduced word
                    M = s @ w.matrix
                    key = M.tobytes()
                    if key in self._index:
                        continue
                    M.setflags(write=False)
                    nxt.append(self._add(M, (i,) + w.word, w.length + 1))
            frontier = nxt
        if len(self.elements) != datum.weyl_order:
            raise AssertionError("Weyl group enumeration produced the wrong order")
        self._stack = np.stack([w.matrix for w in self.elements])

    def _add(self, M, word, length):
        w = WeylElt(M, word, length, self)
        self._index[w._key] = len(self.elements)
        self.elements.append(w)
        return w

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def identity(self) -> WeylElt:
        return self.elements[0]

    @property
    def longest(self) -> WeylElt:
        return self.elements[-1]

    @property
    def matrices(self) -> np.ndarray:
        """All element matrices stacked, shape ``(|W|, dim, dim)``."""
        return self._stack

    def index(self, w) -> int:
        M = w.matrix if isinstance(w, WeylElt) else np.asarray(w, dtype=np.int64)
        return self._index[np.ascontiguousarray(M, dtype=np.int64).tobytes()]

    def element(self, M) -> WeylElt:
        return self.elements[self.index(M)]

    def simple(self, i: int) -> WeylElt:
        return self.element(self.datum.reflections[i])

    def from_word(self, word) -> WeylElt:
        M = np.eye(self.datum.dim, dtype=np.int64)
        for i in word:
            M = M @ self.datum.reflections[i]
        return self.element(M)

    def reflection(self, k: int) -> WeylElt:
        """Reflection in the ``k``-th positive root."""
        d = self.datum
        return self.element(d.reflection_matrix(d.positive_coroots[k], d.positive_roots[k]))

    # -- Coxeter combinatorics -------------------------------------------------
    def length(self, w: WeylElt) -> int:
        d = self.datum
        return int(np.sum((d.rho2 @ (w.matrix @ d.positive_coroots.T)) < 0))

    def right_descents(self, w: WeylElt):
        """Simple ``i`` with ``l(w s_i) < l(w)``."""
        d = self.datum
        img = w.matrix @ d.simple_coroots.T
        return [i for i in range(d.rank) if d.rho2 @ img[:, i] < 0]

    def left_descents(self, w: WeylElt):
        return self.right_descents(w.inverse())

    def bruhat_leq(self, u: WeylElt, w: WeylElt) -> bool:
        """Strong Bruhat order via the lifting property."""
        if u.length > w.length:
            return False
        if w.length == 0:
            return u.length == 0
        if u.length == 0:
            return True
        s = self.right_descents(w)[0]
        sw = self.simple(s)
        ws = w * sw
        us = u * sw
        if us.length < u.length:
            return self.bruhat_leq(us, ws)
        return self.bruhat_leq(u, ws)

    def min_coset_reps(self, J):
        """Minimal-length representatives of ``W / W_J``."""
        J = set(J)
        return [w for w in self.elements if not (set(self.right_descents(w)) & J)]

    # -- subgroups -------------------------------------------------------------
    @cached_property
    def _regular_keys(self):
        # w -> w(2 rho^vee) is injective on W, so these vectors identify elements
        K = self._stack @ self.datum.rho2_check
        lookup = {row.tobytes(): k for k, row in enumerate(K)}
        return K, lookup

    def subgroup(self, generators, bound: int | None = None):
        """Indices of the subgroup generated by ``generators`` (closure)."""
        bound = resource_bound() if bound is None else bound
        K, lookup = self._regular_keys
        gm = [self.elements[self.index(g) if isinstance(g, WeylElt) else int(g)].matrix for g in generators]
        seen = {0}
        frontier = np.array([0])
        while len(frontier):
            F = K[frontier]
            nxt = []
            for g in gm:
                for row in F @ g.T:
                    j = lookup[row.tobytes()]
                    if j not in seen:
                        seen.add(j)
                        nxt.append(j)
            if len(seen) > bound:
                raise ResourceError("generated subgroup exceeds bound")
            frontier = np.array(nxt, dtype=np.int64)
        return sorted(seen)

    def conjugacy_class(self, w: WeylElt, within=None):
        """Indices of ``{g w g^{-1} : g in within}`` (default: all of ``W``)."""
        idx = range(len(self)) if within is None else within
        out = set()
        for k in idx:
            g = self.elements[k].matrix
            ginv = self.elements[k].inverse().matrix
            out.add(self._index[(g @ w.matrix @ ginv).tobytes()])
        return sorted(out)

    def _lookup_keys(self, K):
        lookup = self._regular_keys[1]
        return np.array([lookup[row.tobytes()] for row in K], dtype=np.int64)

    def multiply(self, a, b):
        """Indices of the products ``w_a w_b`` for index arrays ``a`` and ``b``."""
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        K = self._regular_keys[0]
        prod = np.einsum("nij,nj->ni", self._stack[a.ravel()], K[b.ravel()])
        return self._lookup_keys(prod).reshape(a.shape)

    @cached_property
    def simple_conjugation(self):
        """Array ``P`` with ``P[i, k]`` the index of ``s_i w_k s_i``."""
        d = self.datum
        out = []
        for s in d.reflections:
            K = (self._stack @ (s @ d.rho2_check)) @ s.T
            out.append(self._lookup_keys(K))
        return np.array(out).reshape(len(d.reflections), len(self))

    @cached_property
    def inverse_index(self):
        """Array mapping ``k`` to the index of ``w_k^{-1}``."""
        inv = np.round(np.linalg.inv(self._stack.astype(float))).astype(np.int64)
        return self._lookup_keys(inv @ self.datum.rho2_check)

    @cached_property
    def class_labels(self):
        """Conjugacy class label of each element; labels ordered by first element."""
        from scipy.sparse import coo_matrix
        from scipy.sparse.csgraph import connected_components

        N = len(self)
        P = self.simple_conjugation
        rows = np.tile(np.arange(N), P.shape[0])
        g = coo_matrix((np.ones(rows.size, dtype=np.int8), (rows, P.ravel())), shape=(N, N))
        _, lab = connected_components(g, directed=False)
        # relabel in order of first occurrence
        _, first = np.unique(lab, return_index=True)
        order = np.argsort(np.argsort(first))
        return order[lab]

    def conjugacy_classes(self):
        """Partition of ``W`` into conjugacy classes (lists of indices)."""
        lab = self.class_labels
        classes = [[] for _ in range(int(lab.max()) + 1)]
        for k, c in enumerate(lab):
            classes[c].append(k)
        return classes

    @staticmethod
    def intersection(a, b):
        return sorted(set(a) & set(b))


class ExtAffineElt:
    """Element ``t_y w`` of ``Y' x| W`` with ``(y1, w1)(y2, w2) = (y1 + w1 y2, w1 w2)``."""

    __slots__ = ("y", "w")

    def __init__(self, y, w: WeylElt):
        self.y = tuple(int(v) for v in y)
        self.w = w

    def __mul__(self, other):
        y = np.array(self.y) + self.w.act(other.y)
        return ExtAffineElt(y, self.w * other.w)

    def inverse(self):
        wi = self.w.inverse()
        return ExtAffineElt(-wi.act(self.y), wi)

    def eta(self) -> WeylElt:
        """Projection to the finite Weyl group."""
        return self.w

    def act(self, v):
        return np.array(self.y) + self.w.act(v)

    def __eq__(self, other):
        return isinstance(other, ExtAffineElt) and self.y == other.y and self.w == other.w

    def __hash__(self):
        return hash((self.y, self.w))

    def __repr__(self):
        return f"ExtAffineElt(y={list(self.y)}, w={self.w!r})"


_DATUM_CACHE: dict = {}


def build_root_datum(cartan_type: str, rank: int, flavor: str = "sc") -> RootDatum:
    """Cached constructor for :class:`RootDatum`.

    Examples
    --------
    >>> R = build_root_datum("A", 2)
    >>> R.num_roots, len(R.weyl_group), R.index_of_connection
    (6, 6, 3)
    """
    key = (cartan_type.upper(), int(rank), flavor)
    if key not in _DATUM_CACHE:
        _DATUM_CACHE[key] = RootDatum(*key)
    return _DATUM_CACHE[key]
