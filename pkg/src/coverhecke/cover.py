"""
Covers: the data (n, Q) on a root datum, derived bilinear forms, the
lattices Y_{Q,n}, Y_{Q,n}^sc, P_{Q,n}, finite quotients, and the
saturation / alignment / oasitic / persistence predicates.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property

import numpy as np

from ._intlinalg import det_int, kernel_basis_int, rational_inverse, smith
from .exact import ConfigurationError, epsilon as _epsilon
from .rootdata import RootDatum, build_root_datum

__all__ = [
    "LatticeQuotient",
    "CoverSpec",
    "make_cover",
    "upper_hnf",
    "sublattices",
    "det_BQ",
    "classify",
    "table_prediction",
    "table_sweep",
    "TABLE_SWEEP",
]


# ---------------------------------------------------------------------------
# lattices
# ---------------------------------------------------------------------------

def upper_hnf(gens, dim: int) -> np.ndarray:
    """Upper-triangular column Hermite form of the lattice spanned by ``gens``.

    ``gens`` is a list of integer vectors of length ``dim`` spanning a
    full-rank sublattice of ``Z**dim``.  The result ``H`` has columns
    ``h_j`` with ``H[i, j] = 0`` for ``i > j``, ``H[j, j] > 0`` and
    ``0 <= H[i, j] < H[i, i]`` for ``i < j``.
    """
    cols = [[int(x) for x in g] for g in gens if any(g)]
    H = [[0] * dim for _ in range(dim)]  # H[j] is column j
    for j in range(dim - 1, -1, -1):
        # eliminate row j among remaining columns by gcd steps
        piv = None
        rest = []
        for c in cols:
            if c[j] == 0:
                rest.append(c)
                continue
            if piv is None:
                piv = c
                continue
            a, b = piv, c
            while b[j]:
                k = a[j] // b[j]
                a = [x - k * y for x, y in zip(a, b)]
                a, b = b, a
            piv = a
            if any(b):
                rest.append(b)
        if piv is None:
            raise ValueError("generators do not span a full-rank lattice")
        if piv[j] < 0:
            piv = [-x for x in piv]
        H[j] = piv
        cols = rest
    # reduce entries above the diagonal
    for k in range(dim):
        for i in range(k - 1, -1, -1):
            # make 0 <= H[k][i] < H[i][i] using column i (which is zero below row i)
            f = H[k][i] // H[i][i]
            if f:
                H[k] = [x - f * y for x, y in zip(H[k], H[i])]
    return np.array(H, dtype=np.int64).T


def _preimage_mod(M, n: int):
    """Basis (rows) of ``{u in Z^k : M u = 0 mod n}`` for an integer matrix ``M``."""
    M = [[int(x) for x in row] for row in M]
    rows, k = len(M), len(M[0])
    if rows == 0:
        return [[int(i == j) for j in range(k)] for i in range(k)]
    big = [M[i] + [(-n if i == j else 0) for j in range(rows)] for i in range(rows)]
    ker = kernel_basis_int(big)
    return [v[:k] for v in ker]


class LatticeQuotient:
    """The quotient ``A / L`` of a lattice ``A`` by a sublattice ``L``.

    Parameters
    ----------
    sub_gens : sequence of integer vectors
        Generators of ``L`` in the coordinates of the ambient ``Y = Z**dim``.
    dim : int
        Rank of ``Y``.
    ambient_gens : sequence of integer vectors, optional
        Generators of ``A`` (default ``Y``).  ``L`` must have finite index
        in ``A`` for the quotient to be enumerated; membership tests work
        regardless.
    """

    def __init__(self, sub_gens, dim: int, ambient_gens=None):
        self.dim = int(dim)
        if ambient_gens is None:
            ambient = np.eye(self.dim, dtype=np.int64)
        else:
            ambient = _lattice_basis(ambient_gens, self.dim)
        self.ambient = ambient  # columns
        self.k = ambient.shape[1]
        # left inverse of the ambient basis (rational)
        AtA = (ambient.T @ ambient).tolist()
        inv = rational_inverse(AtA)
        self._left = [[sum(inv[i][t] * int(ambient[j, t]) for t in range(self.k)) for j in range(self.dim)]
                      for i in range(self.k)]
        sub_coords = [self.to_ambient(g) for g in sub_gens]
        self.sub_rank = np.linalg.matrix_rank(np.array(sub_coords, dtype=float)) if sub_coords else 0
        self.is_finite = self.sub_rank == self.k
        if self.is_finite:
            self.hnf = upper_hnf(sub_coords, self.k)
            self.sub_basis = ambient @ self.hnf
            self.box = tuple(int(self.hnf[j, j]) for j in range(self.k))
            self.order = int(np.prod(self.box, dtype=object))
            strides, s = [], 1
            for b in reversed(self.box):
                strides.append(s)
                s *= b
            self.strides = tuple(reversed(strides))
        else:
            basis = [row for row in _lattice_basis(sub_coords, self.k, full=False).T] if sub_coords else []
            self.hnf = None
            self.sub_basis = ambient @ np.array(basis, dtype=np.int64).T if basis else np.zeros((self.dim, 0), dtype=np.int64)
            self.box = None
            self.order = math.inf

    # -- coordinates -------------------------------------------------------
    def to_ambient(self, y):
        """Coordinates of ``y`` (in ``Y``) with respect to the ambient basis."""
        c = [sum(row[j] * int(y[j]) for j in range(self.dim)) for row in self._left]
        if any(Fraction(x).denominator != 1 for x in c):
            raise ValueError(f"{list(y)} is not in the ambient lattice")
        out = [int(x) for x in c]
        if not np.array_equal(self.ambient @ np.array(out, dtype=np.int64), np.asarray(y, dtype=np.int64)):
            raise ValueError(f"{list(y)} is not in the ambient lattice")
        return out

    def in_ambient(self, y) -> bool:
        try:
            self.to_ambient(y)
            return True
        except ValueError:
            return False

    def contains(self, y) -> bool:
        """Membership of ``y`` in the sublattice ``L``."""
        if not self.in_ambient(y):
            return False
        B = self.sub_basis
        if B.shape[1] == 0:
            return not any(int(v) for v in y)
        from ._intlinalg import solve_integer
        return solve_integer(B, [int(v) for v in y]) is not None

    # -- canonical representatives ----------------------------------------
    def _require_finite(self):
        if not self.is_finite:
            raise ValueError("quotient is infinite")

    def reduce_coords(self, c):
        """Reduce ambient coordinates into the canonical box."""
        self._require_finite()
        c = [int(x) for x in c]
        H = self.hnf
        for j in range(self.k - 1, -1, -1):
            f = c[j] // int(H[j, j])
            if f:
                for i in range(j + 1):
                    c[i] -= f * int(H[i, j])
        return c

    def reduce(self, y) -> np.ndarray:
        """Canonical representative of ``y + L`` (as a vector in ``Y``)."""
        c = self.reduce_coords(self.to_ambient(y))
        return self.ambient @ np.array(c, dtype=np.int64)

    def encode(self, y) -> int:
        c = self.reduce_coords(self.to_ambient(y))
        return sum(a * s for a, s in zip(c, self.strides))

    def decode(self, idx: int) -> np.ndarray:
        self._require_finite()
        c = []
        for s, b in zip(self.strides, self.box):
            c.append((idx // s) % b)
        return self.ambient @ np.array(c, dtype=np.int64)

    def representatives(self) -> np.ndarray:
        """All canonical representatives, shape ``(order, dim)``, in index order."""
        self._require_finite()
        grids = np.indices(self.box, dtype=np.int64).reshape(self.k, -1)
        return (self.ambient @ grids).T

    # vectorised variants on arrays of shape (N, dim) in ambient coordinates
    def reduce_coords_many(self, C: np.ndarray) -> np.ndarray:
        self._require_finite()
        H = self.hnf
        if np.count_nonzero(H - np.diag(np.diag(H))) == 0:
            return np.mod(C, np.diag(H))
        C = np.array(C, dtype=np.int64, copy=True)
        for j in range(self.k - 1, -1, -1):
            f = np.floor_divide(C[:, j], H[j, j])
            for i in range(j + 1):
                if H[i, j]:
                    C[:, i] -= f * H[i, j]
        return C

    def encode_coords_many(self, C: np.ndarray) -> np.ndarray:
        R = self.reduce_coords_many(C)
        return R @ np.array(self.strides, dtype=np.int64)

    def to_ambient_many(self, Yv: np.ndarray) -> np.ndarray:
        if self.k == self.dim and np.array_equal(self.ambient, np.eye(self.dim, dtype=np.int64)):
            return np.asarray(Yv, dtype=np.int64)
        return np.array([self.to_ambient(y) for y in Yv], dtype=np.int64).reshape(-1, self.k)

    @cached_property
    def _membership(self):
        inv = rational_inverse(self.hnf.tolist())
        den = 1
        for row in inv:
            for x in row:
                den = den * x.denominator // math.gcd(den, x.denominator)
        num = np.array([[int(x * den) for x in row] for row in inv], dtype=np.int64)
        return num, den

    def contains_many(self, V: np.ndarray) -> np.ndarray:
        """Vectorised membership in ``L`` for rows of ``V`` (finite quotients)."""
        self._require_finite()
        num, den = self._membership
        C = self.to_ambient_many(V)
        return np.all((C @ num.T) % den == 0, axis=1)

    @cached_property
    def invariant_factors(self) -> tuple:
        """Nontrivial invariant factors of the (finite) quotient."""
        self._require_finite()
        S, _, _ = smith(self.hnf)
        d = sorted(abs(int(S[i, i])) for i in range(self.k))
        return tuple(x for x in d if x != 1)

    def __len__(self):
        self._require_finite()
        return self.order

    def __repr__(self):
        if self.is_finite:
            return f"LatticeQuotient(order={self.order}, factors={self.invariant_factors})"
        return "LatticeQuotient(infinite)"


def _lattice_basis(gens, dim, full=True):
    """Columns forming a basis of the lattice spanned by ``gens`` in ``Z**dim``."""
    gens = [[int(x) for x in g] for g in gens]
    if full:
        try:
            return upper_hnf(gens, dim)
        except ValueError:
            pass
    # general rank: Smith form of the generator matrix
    G = np.array(gens, dtype=np.int64).T  # dim x m
    S, U, V = smith(G)
    Uinv = np.round(np.linalg.inv(U.astype(float))).astype(np.int64)
    cols = []
    for i in range(min(S.shape)):
        if S[i, i] != 0:
            cols.append(Uinv[:, i] * S[i, i])
    B = np.array(cols, dtype=np.int64).T
    return B


# ---------------------------------------------------------------------------
# cover specification
# ---------------------------------------------------------------------------

class CoverSpec:
    """An ``n``-fold cover of a split group, specified by ``(n, Q)``.

    Parameters
    ----------
    datum : RootDatum
    n : int
        Degree of the cover.
    Q : int or sequence of int, optional
        For semisimple data: either the value of ``Q`` on short coroots
        (extended by Weyl invariance), or the values ``Q(alpha_i^vee)`` on
        the simple coroots.  Ignored for ``GL`` (use ``gl_pq``).
    gl_pq : (p, q), optional
        For ``GL_r``: ``B(e_i, e_i) = 2p`` and ``B(e_i, e_j) = q`` otherwise.
    q : int, optional
        Residue field size attached for symbol and Gauss-sum computations.
    """

    def __init__(self, datum: RootDatum, n: int, Q=1, gl_pq=None, q: int | None = None):
        self.datum = datum
        self.n = int(n)
        if self.n < 1:
            raise ConfigurationError("n must be a positive integer")
        R = datum
        if R.flavor == "GL":
            if gl_pq is None:
                raise ConfigurationError("GL covers need gl_pq = (p, q)")
            p_, q_ = (int(x) for x in gl_pq)
            self.gl_pq = (p_, q_)
            B = np.full((R.dim, R.dim), q_, dtype=np.int64)
            np.fill_diagonal(B, 2 * p_)
        else:
            if gl_pq is not None:
                raise ConfigurationError("gl_pq only applies to GL covers")
            self.gl_pq = None
            B = self._gram_from_Q(Q)
        self.B = B
        if np.any(B != B.T):
            raise ConfigurationError("B_Q is not symmetric; Q is not Weyl invariant")
        if np.any(np.diag(B) % 2):
            raise ConfigurationError("Q is not integral on Y")
        for s in R.reflections:
            if not np.array_equal(s.T @ B @ s, B):
                raise ConfigurationError("Q is not Weyl invariant")
        D = np.triu(B, 1) + np.diag(np.diag(B) // 2)
        self.D = D
        self.q = None if q is None else int(q)
        if self.q is not None and (self.q - 1) % self.n:
            raise ConfigurationError(f"n = {self.n} must divide q - 1 = {self.q - 1}")

    def _gram_from_Q(self, Q):
        R = self.datum
        r = R.rank
        if isinstance(Q, (list, tuple, np.ndarray)):
            Qs = [int(x) for x in Q]
            if len(Qs) == 1:
                Qs = [Qs[0] * (max(R.root_lengths) // d) for d in R.root_lengths]
            if len(Qs) != r:
                raise ConfigurationError("Q must give one value per simple coroot")
        else:
            Qs = [int(Q) * (max(R.root_lengths) // d) for d in R.root_lengths]
        self._Q_simple_input = tuple(Qs)
        C = R.cartan
        Bsc = [[Fraction(Qs[j] * int(C[j, i])) for j in range(r)] for i in range(r)]
        for i in range(r):
            for j in range(r):
                if Bsc[i][j] != Bsc[j][i]:
                    raise ConfigurationError("Q values are not Weyl invariant")
        K = R.simple_coroots  # rows: coroots in Y coords
        Kinv = rational_inverse(K.tolist())  # (K)^{-1}
        KinvT = [[Kinv[j][i] for j in range(r)] for i in range(r)]
        tmp = [[sum(Kinv[i][t] * Bsc[t][j] for t in range(r)) for j in range(r)] for i in range(r)]
        BY = [[sum(tmp[i][t] * KinvT[t][j] for t in range(r)) for j in range(r)] for i in range(r)]
        if any(x.denominator != 1 for row in BY for x in row):
            raise ConfigurationError("B_Q is not integral on Y; scale Q")
        return np.array([[int(x) for x in row] for row in BY], dtype=np.int64)

    # -- forms -----------------------------------------------------------------
    def B_form(self, y, z) -> int:
        return int(np.asarray(y, dtype=np.int64) @ self.B @ np.asarray(z, dtype=np.int64))

    def D_form(self, y, z) -> int:
        return int(np.asarray(y, dtype=np.int64) @ self.D @ np.asarray(z, dtype=np.int64))

    def Q_form(self, y) -> int:
        return self.D_form(y, y)

    def Q_rational(self, v) -> Fraction:
        """``Q`` extended to ``Y (x) Q``."""
        v = [Fraction(x) for x in v]
        tot = Fraction(0)
        for i in range(len(v)):
            for j in range(len(v)):
                tot += v[i] * int(self.B[i, j]) * v[j]
        return tot / 2

    @cached_property
    def Q_simple(self) -> tuple:
        """``Q(alpha_i^vee)`` on simple coroots."""
        return tuple(self.Q_form(c) for c in self.datum.simple_coroots)

    @cached_property
    def Q_positive(self) -> tuple:
        return tuple(self.Q_form(c) for c in self.datum.positive_coroots)

    def n_alpha_of(self, Qval: int) -> int:
        return self.n // math.gcd(self.n, int(Qval))

    @cached_property
    def n_simple(self) -> tuple:
        """``n_alpha`` for the simple roots."""
        return tuple(self.n_alpha_of(x) for x in self.Q_simple)

    @cached_property
    def n_positive(self) -> tuple:
        return tuple(self.n_alpha_of(x) for x in self.Q_positive)

    @cached_property
    def modified_simple_coroots(self) -> np.ndarray:
        return np.array([m * c for m, c in zip(self.n_simple, self.datum.simple_coroots)], dtype=np.int64)

    @cached_property
    def modified_positive_coroots(self) -> np.ndarray:
        return np.array([m * c for m, c in zip(self.n_positive, self.datum.positive_coroots)], dtype=np.int64)

    def epsilon(self, q: int | None = None) -> int:
        q = self.q if q is None else q
        if q is None:
            raise ConfigurationError("no residue field size attached")
        return _epsilon(q, self.n)

    def with_q(self, q: int) -> "CoverSpec":
        return CoverSpec(self.datum, self.n, self._Q_arg(), gl_pq=self.gl_pq, q=q)

    def _Q_arg(self):
        return list(self._Q_simple_input) if self.gl_pq is None else None

    # -- lattices ----------------------------------------------------------------
    @cached_property
    def Y_Qn_basis(self) -> np.ndarray:
        """Columns spanning ``Y_{Q,n} = {y in Y : B_Q(y, Y) in nZ}`` (upper Hermite form)."""
        gens = _preimage_mod(self.B, self.n)
        return upper_hnf(gens, self.datum.dim)

    @cached_property
    def Ysc_Qn_gens(self) -> np.ndarray:
        """Generators ``n_alpha alpha^vee`` of ``Y_{Q,n}^sc`` (rows)."""
        return self.modified_positive_coroots

    @cached_property
    def X(self) -> LatticeQuotient:
        """``X_{Q,n} = Y / Y_{Q,n}``."""
        return LatticeQuotient(self.Y_Qn_basis.T, self.datum.dim)

    @cached_property
    def X_sc(self) -> LatticeQuotient:
        """``Y / Y_{Q,n}^sc`` (infinite when ``Y^sc`` has smaller rank than ``Y``)."""
        return LatticeQuotient(self.modified_simple_coroots, self.datum.dim)

    @cached_property
    def Xsc_sc(self) -> LatticeQuotient:
        """``Y^sc / Y_{Q,n}^sc``."""
        return LatticeQuotient(self.modified_simple_coroots, self.datum.dim,
                               ambient_gens=self.datum.simple_coroots)

    @cached_property
    def P_Qn_basis(self):
        """``P_{Q,n} = {lambda in P : <alpha_i, lambda> in n_{alpha_i} Z}`` (rational columns)."""
        R = self.datum
        if R.flavor == "GL":
            gens = _preimage_mod_diag(R.simple_roots, self.n_simple)
            H = upper_hnf(gens, R.dim)
            return [[Fraction(int(H[i, j])) for j in range(R.dim)] for i in range(R.dim)]
        cols = [[m * x for x in R.fundamental_coweight(i)] for i, m in enumerate(self.n_simple)]
        return [[cols[j][i] for j in range(R.dim)] for i in range(R.dim)]

    def in_Y_Qn(self, y) -> bool:
        return all(v % self.n == 0 for v in (self.B @ np.asarray(y, dtype=np.int64)))

    # -- predicates --------------------------------------------------------------
    @cached_property
    def det_BQ(self) -> int:
        return det_int(self.B.tolist())

    @cached_property
    def Ysc_cap_YQn(self) -> np.ndarray:
        """Basis rows of ``Y^sc cap Y_{Q,n}``, in ``Y`` coordinates."""
        K = self.datum.simple_coroots  # rows
        M = self.B @ K.T  # condition on coroot coordinates u: B K^T u = 0 mod n
        us = _preimage_mod(M, self.n)
        return np.array([np.array(u) @ K for u in us], dtype=np.int64)

    @cached_property
    def is_saturated(self) -> bool:
        L = self.Xsc_sc
        return all(L.contains(v) for v in self.Ysc_cap_YQn)

    @cached_property
    def alignment(self):
        """``n'`` with ``Y_{Q,n}^sc = n' Y^sc``, or ``None``."""
        L = self.Xsc_sc
        H = L.hnf
        d = int(H[0, 0])
        if np.array_equal(H, d * np.eye(L.k, dtype=np.int64)):
            return d
        return None

    @property
    def is_aligned(self) -> bool:
        return self.alignment is not None

    @property
    def is_very_saturated(self) -> bool:
        return self.is_saturated and self.is_aligned

    @cached_property
    def is_oasitic(self) -> bool:
        n = self.n
        return (all(math.gcd(n, c) == 1 for c in self.datum.highest_coroot_coeffs)
                and math.gcd(n, abs(self.det_BQ)) == 1)

    def short_Q_is_one(self) -> bool:
        R = self.datum
        dmax = max(R.root_lengths)
        return all(Qv == 1 for Qv, d in zip(self.Q_simple, R.root_lengths) if d == dmax)

    # -- serialisation ------------------------------------------------------------
    def to_json(self) -> dict:
        R = self.datum
        out = {"type": R.cartan_type, "rank": R.rank, "flavor": R.flavor, "n": self.n,
               "Q": list(self.Q_simple)}
        if self.gl_pq is not None:
            out["gl_pq"] = list(self.gl_pq)
        if self.q is not None:
            out["q"] = self.q
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "CoverSpec":
        allowed = {"type", "rank", "flavor", "n", "Q", "gl_pq", "q"}
        extra = set(obj) - allowed
        if extra:
            raise ConfigurationError(f"unknown cover keys: {sorted(extra)}")
        for key in ("type", "rank", "n"):
            if key not in obj:
                raise ConfigurationError(f"cover spec missing {key!r}")
        flavor = obj.get("flavor", "GL" if "gl_pq" in obj else "sc")
        R = build_root_datum(obj["type"], obj["rank"], flavor)
        return cls(R, obj["n"], obj.get("Q", 1), gl_pq=obj.get("gl_pq"), q=obj.get("q"))

    def __repr__(self):
        R = self.datum
        extra = f", gl_pq={self.gl_pq}" if self.gl_pq else f", Q={list(self.Q_simple)}"
        return f"CoverSpec({R.cartan_type}{R.rank}/{R.flavor}, n={self.n}{extra})"


def _preimage_mod_diag(M, mods):
    # {u : M[i] . u = 0 mod mods[i]}
    M = [[int(x) for x in row] for row in M]
    rows, k = len(M), len(M[0])
    big = [M[i] + [(-mods[i] if i == j else 0) for j in range(rows)] for i in range(rows)]
    return [v[:k] for v in kernel_basis_int(big)]


def make_cover(cartan_type: str, rank: int, n: int, Q=1, flavor: str = "sc", gl_pq=None, q=None) -> CoverSpec:
    """Convenience constructor from type/rank/flavor."""
    if gl_pq is not None:
        flavor = "GL"
    return CoverSpec(build_root_datum(cartan_type, rank, flavor), n, Q, gl_pq=gl_pq, q=q)


def sublattices(c: CoverSpec) -> dict:
    """The lattices attached to a cover and their quotients."""
    inc = all(c.in_Y_Qn(v) for v in c.Ysc_Qn_gens)
    if not inc:
        raise AssertionError("Y^sc_{Q,n} is not contained in Y_{Q,n}")
    return {
        "Y_Qn": c.Y_Qn_basis,
        "Ysc_Qn": c.Xsc_sc.sub_basis,
        "P_Qn": c.P_Qn_basis,
        "X_Qn": c.X,
        "Xsc_Qn": c.X_sc,
    }


def det_BQ(c: CoverSpec) -> int:
    """Gram determinant of ``B_Q`` on a basis of ``Y``."""
    return c.det_BQ


def classify(c: CoverSpec, z=None) -> dict:
    """Saturation, alignment, oasitic and ``z``-persistence predicates."""
    from .orbits import is_z_persistent
    out = {
        "saturated": c.is_saturated,
        "aligned": c.is_aligned,
        "very_saturated": c.is_very_saturated,
        "oasitic": c.is_oasitic,
    }
    if z is not None:
        out["z_persistent"] = is_z_persistent(c, z)
    return out


def _coprime(n, *ps):
    return all(n % p for p in ps)


def table_prediction(cartan_type: str, rank: int, n: int) -> dict:
    """Closed-form saturation predicates for simply-connected covers with ``Q(short) = 1``.

    This is the tabulated answer, written independently of the lattice
    computation in :func:`classify`.

    >>> table_prediction("B", 3, 3)
    {'saturated': True, 'very_saturated': True, 'oasitic': True}
    """
    t, r, n = cartan_type.upper(), int(rank), int(n)
    if t == "A":
        sat = vsat = oas = math.gcd(n, r + 1) == 1
    elif t == "B":
        vsat = oas = n % 2 == 1
        sat = vsat or (r % 2 == 1 and n % 4 == 2)
    elif t in "CD":
        sat = vsat = oas = n % 2 == 1
    elif t == "E":
        if r == 6:
            sat = vsat = _coprime(n, 3)
            oas = _coprime(n, 2, 3)
        elif r == 7:
            sat = vsat = _coprime(n, 2)
            oas = _coprime(n, 2, 3)
        elif r == 8:
            sat = vsat = True
            oas = _coprime(n, 2, 3, 5)
        else:
            raise ConfigurationError(f"no table entry for E{r}")
    elif t == "F" and r == 4:
        sat, vsat, oas = True, _coprime(n, 2), _coprime(n, 2, 3)
    elif t == "G" and r == 2:
        sat, vsat, oas = True, _coprime(n, 3), _coprime(n, 2, 3)
    else:
        raise ConfigurationError(f"no table entry for {t}{r}")
    return {"saturated": sat, "very_saturated": vsat, "oasitic": oas}


TABLE_SWEEP = (
    [("A", r) for r in range(1, 7)] + [("B", r) for r in range(2, 5)] + [("C", r) for r in range(2, 5)]
    + [("D", 4), ("D", 5), ("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]
)


def table_sweep(types=TABLE_SWEEP, n_max: int = 12) -> list:
    """Rows comparing :func:`classify` with :func:`table_prediction`."""
    rows = []
    for t, r in types:
        for n in range(1, n_max + 1):
            c = make_cover(t, r, n)
            got = classify(c)
            want = table_prediction(t, r, n)
            got = {k: got[k] for k in want}
            rows.append({"type": t, "rank": r, "n": n, **got, "match": got == want})
    return rows
