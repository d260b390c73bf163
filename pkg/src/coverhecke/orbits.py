"""
Twisted Weyl orbits on finite lattice quotients.

For ``z`` in the coweight lattice ``P`` the twisted action is
``w[y]_z = w(y + z) - z = w y + (w z - z)``; the shift ``w z - z`` lies in
the coroot lattice, so the action is defined on ``Y`` and on every
``W``-stable quotient of it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ._intlinalg import solve_integer, rational_inverse
from .cover import CoverSpec, LatticeQuotient
from .exact import ConfigurationError
from .rootdata import ResourceError, resource_bound

__all__ = [
    "OrbitRecord",
    "as_coweight",
    "twist_shifts",
    "enumerate_orbits",
    "is_splitting",
    "splitting_bruteforce",
    "stabilizer_of",
    "delta_a_y",
    "is_z_persistent",
    "is_parabolic",
    "s_property",
]


def as_coweight(c: CoverSpec, z) -> tuple:
    """Normalise ``z`` to a tuple of Fractions in ``Y (x) Q`` coordinates.

    ``z`` may be ``None`` or ``0`` (zero), the string ``"rho"`` (half the
    sum of positive coroots), or a vector.
    """
    R = c.datum
    if z is None or (isinstance(z, (int, Fraction)) and z == 0):
        return tuple(Fraction(0) for _ in range(R.dim))
    if isinstance(z, str):
        if z == "rho":
            return tuple(R.rho_check)
        if z == "-rho":
            return tuple(-x for x in R.rho_check)
        raise ConfigurationError(f"unknown twist {z!r}")
    v = tuple(Fraction(x) for x in z)
    if len(v) != R.dim:
        raise ConfigurationError("twist has wrong length")
    if R.flavor != "GL":
        for a in R.simple_roots:
            if sum(int(ai) * vi for ai, vi in zip(a, v)).denominator != 1:
                raise ConfigurationError(f"{z} is not a coweight")
    elif any(x.denominator != 1 for x in v):
        raise ConfigurationError(f"{z} is not in P = Y for GL")
    return v


def twist_shifts(c: CoverSpec, z) -> np.ndarray:
    """Integer shifts ``w z - z`` for all ``w`` in ``W`` (shape ``(|W|, dim)``)."""
    z = as_coweight(c, z)
    cache = c.__dict__.setdefault("_twist_cache", {})
    if z not in cache:
        cache[z] = _twist_shifts(c, z)
    return cache[z]


def _twist_shifts(c, z):
    den = 1
    for x in z:
        den = den * x.denominator // np.gcd(den, x.denominator)
    zn = np.array([int(x * den) for x in z], dtype=np.int64)
    M = c.datum.weyl_group.matrices
    sh = M @ zn - zn
    if np.any(sh % den):
        raise ConfigurationError("w z - z is not integral; z is not a coweight")
    return sh // den


def _simple_shifts(c, z):
    z = as_coweight(c, z)
    R = c.datum
    out = []
    for i in range(R.rank):
        p = sum(int(a) * v for a, v in zip(R.simple_roots[i], z))
        out.append(-int(p) * R.simple_coroots[i])
    return out


@dataclass
class OrbitRecord:
    """A ``(W, z)``-orbit in a finite quotient of ``Y``."""

    cover: CoverSpec
    z: tuple
    rep: np.ndarray
    rep_index: int
    elements: np.ndarray
    stabilizer: list
    quotient: LatticeQuotient = field(repr=False)
    _split: tuple | None = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return int(len(self.elements))

    @property
    def stab_order(self) -> int:
        return len(self.stabilizer)

    @property
    def free(self) -> bool:
        return self.stab_order == 1

    @property
    def trivial(self) -> bool:
        return self.size == 1

    @property
    def splitting(self) -> bool:
        return is_splitting(self)[0]

    @property
    def witness(self):
        return is_splitting(self)[1]

    @property
    def parabolic_stabilizer(self) -> bool:
        return is_parabolic(self.cover.datum.weyl_group, self.stabilizer)

    def element_vectors(self) -> np.ndarray:
        return np.array([self.quotient.decode(int(i)) for i in self.elements], dtype=np.int64)

    def contains(self, y) -> bool:
        return self.quotient.encode(y) in set(int(i) for i in self.elements)

    def to_json(self) -> dict:
        ok, wit = is_splitting(self)
        row = {"rep": [int(x) for x in self.rep], "size": self.size,
               "stab_order": self.stab_order, "splitting": bool(ok)}
        if ok:
            row["witness"] = [int(x) for x in wit]
        return row


def _generator_images(c, Q: LatticeQuotient, z, pts):
    """Encoded images of all points under each simple reflection (twisted)."""
    R = c.datum
    out = []
    for i, sh in enumerate(_simple_shifts(c, z)):
        img = pts - np.outer(pts @ R.simple_roots[i], R.simple_coroots[i]) + sh
        out.append(Q.encode_coords_many(Q.to_ambient_many(img)))
    return out


def stabilizer_of(c: CoverSpec, y, z=None, quotient: LatticeQuotient | None = None):
    """Indices ``w`` in ``W`` fixing the class of ``y`` under ``w[.]_z``."""
    Q = c.X if quotient is None else quotient
    W = c.datum.weyl_group
    y = np.asarray(y, dtype=np.int64)
    diffs = W.matrices @ y + twist_shifts(c, z) - y
    return [int(k) for k in np.nonzero(Q.contains_many(diffs))[0]]


def enumerate_orbits(c: CoverSpec, z=None, quotient: LatticeQuotient | None = None):
    """Partition ``X_{Q,n}`` (or another finite quotient) into ``(W, z)``-orbits.

    Orbits are ordered by the index of their canonical representative, which
    is the representative of smallest index in the canonical box.

    Examples
    --------
    >>> from coverhecke.cover import make_cover
    >>> [o.size for o in enumerate_orbits(make_cover("A", 1, 6, Q=-1))]
    [1, 2]
    """
    Q = c.X if quotient is None else quotient
    if not Q.is_finite:
        raise ConfigurationError("orbit enumeration needs a finite quotient")
    bound = resource_bound()
    if Q.order > 8 * bound:
        raise ResourceError(f"|X| = {Q.order} exceeds bound")
    W = c.datum.weyl_group  # raises ResourceError for oversized W
    zc = as_coweight(c, z)
    N = Q.order
    pts = Q.representatives()
    imgs = _generator_images(c, Q, zc, pts)
    src = np.concatenate([np.arange(N)] * len(imgs)) if imgs else np.arange(0)
    dst = np.concatenate(imgs) if imgs else np.arange(0)
    G = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(N, N))
    ncomp, labels = connected_components(G, directed=True, connection="weak")
    order = np.argsort(labels, kind="stable")
    bounds = np.searchsorted(labels[order], np.arange(ncomp + 1))
    records = []
    shifts = twist_shifts(c, zc)
    for k in range(ncomp):
        members = np.sort(order[bounds[k]:bounds[k + 1]])
        rep_idx = int(members[0])
        rep = pts[rep_idx]
        diffs = W.matrices @ rep + shifts - rep
        stab = [int(j) for j in np.nonzero(Q.contains_many(diffs))[0]]
        if len(stab) * len(members) != len(W):
            raise AssertionError("orbit-stabilizer count failed")
        records.append(OrbitRecord(c, zc, rep, rep_idx, members, stab, Q))
    records.sort(key=lambda o: o.rep_index)
    return records


def _greedy_generators(W, H):
    """A small generating set of the subgroup with index set ``H``."""
    Hs = set(H)
    if len(Hs) == 1:
        return []
    gens, span = [], {0}
    # reflections first: they generate whenever H is a reflection subgroup
    for k in sorted(Hs, key=lambda j: W.elements[j].length):
        if k not in span:
            gens.append(k)
            span = set(W.subgroup(gens))
            if len(span) == len(Hs):
                break
    return gens


def is_parabolic(W, H) -> bool:
    """Whether ``H`` is the pointwise stabilizer of a subspace (a parabolic subgroup)."""
    if len(H) == 1:
        return True
    gens = _greedy_generators(W, H)
    d = W.datum.dim
    rows = []
    for g in gens:
        rows.extend((W.elements[g].matrix - np.eye(d, dtype=np.int64)).tolist())
    from ._intlinalg import kernel_basis_int
    fix = kernel_basis_int(rows)
    if not fix:
        return len(H) == len(W)
    F = np.array(fix, dtype=np.int64).T
    M = W.matrices
    ok = np.all(np.all(M @ F == F[None, :, :], axis=1), axis=1)
    return int(ok.sum()) == len(H)


def is_splitting(o: OrbitRecord):
    """Decide whether an orbit splits; return ``(flag, witness or None)``.

    The coset ``y0 + L`` of the representative must contain a point fixed by
    every ``w`` in ``Stab_W(y0 + L)`` under the twisted action.  This is an
    integer linear system in the coordinates of ``L``.
    """
    if o._split is not None:
        return o._split
    c, W = o.cover, o.cover.datum.weyl_group
    y0 = np.asarray(o.rep, dtype=np.int64)
    if o.free:
        o._split = (True, y0.copy())
        return o._split
    gens = _greedy_generators(W, o.stabilizer)
    shifts = twist_shifts(c, o.z)
    L = o.quotient.sub_basis  # dim x k
    d = c.datum.dim
    A_rows, b = [], []
    for g in gens:
        Mg = W.elements[g].matrix
        Ag = (Mg - np.eye(d, dtype=np.int64)) @ L
        bg = -(shifts[g] + (Mg - np.eye(d, dtype=np.int64)) @ y0)
        A_rows.extend(Ag.tolist())
        b.extend(int(x) for x in bg)
    u = solve_integer(A_rows, b)
    if u is None:
        o._split = (False, None)
    else:
        wit = y0 + L @ np.array(u, dtype=np.int64)
        o._split = (True, wit)
    return o._split


def splitting_bruteforce(o: OrbitRecord, radius: int | None = None):
    """Search lifts of the representative in a box for a splitting witness.

    Independent of :func:`is_splitting`: every candidate is tested against the
    whole stabilizer by direct evaluation of the twisted action.
    """
    c, W = o.cover, o.cover.datum.weyl_group
    radius = 2 * c.n if radius is None else radius
    d = c.datum.dim
    shifts = twist_shifts(c, o.z)
    Hm = W.matrices[o.stabilizer]
    Hs = shifts[o.stabilizer]
    rng = np.arange(-radius, radius + 1)
    grid = np.stack(np.meshgrid(*([rng] * d), indexing="ij"), axis=-1).reshape(-1, d)
    enc = o.quotient.encode_coords_many(o.quotient.to_ambient_many(grid))
    cand = grid[enc == o.rep_index]
    for y in cand:
        imgs = Hm @ y + Hs
        if np.all(imgs == y):
            return True, y
    return False, None


def delta_a_y(c: CoverSpec, y):
    """Affine simple reflections fixing ``y`` in the alcove picture.

    Returns a sorted tuple of labels: ``i`` (1-based) for ``alpha_i`` with
    ``<alpha_i, y> = 0``, and ``0`` for ``alpha_0`` when
    ``<alpha^dagger, y> = n``.  Requires ``Y_{Q,n} = nY``.
    """
    if not (c.is_very_saturated and c.short_Q_is_one()):
        raise ConfigurationError("delta_a_y needs a very saturated cover with Q(short coroot) = 1")
    R = c.datum
    y = np.asarray(y, dtype=np.int64)
    out = [i + 1 for i in range(R.rank) if int(R.simple_roots[i] @ y) == 0]
    if int(R.highest_root @ y) == c.n:
        out.insert(0, 0)
    return tuple(out)


def _sc_member_many(c, V):
    """Vectorised membership of rows of ``V`` in ``Y_{Q,n}^sc``."""
    B = c.Xsc_sc.sub_basis  # dim x k, full column rank
    k = B.shape[1]
    G = (B.T @ B).tolist()
    Ginv = rational_inverse(G)
    den = 1
    for row in Ginv:
        for x in row:
            den = den * x.denominator // np.gcd(den, x.denominator)
    Ln = np.array([[int(x * den) for x in row] for row in Ginv], dtype=object) @ B.T.astype(object)
    U = (np.asarray(V, dtype=object) @ Ln.T)
    ok_int = np.all(U % den == 0, axis=1)
    out = np.zeros(len(V), dtype=bool)
    for i in np.nonzero(ok_int)[0]:
        u = np.array([int(x) // den for x in U[i]], dtype=np.int64)
        out[i] = np.array_equal(B @ u, np.asarray(V[i], dtype=np.int64))
    return out


def is_z_persistent(c: CoverSpec, z=None, orbits=None) -> bool:
    """Whether every ``(W, z)``-orbit has equal stabilizers in the two quotients.

    For each orbit representative ``y`` the stabilizer of ``y + Y_{Q,n}`` is
    compared with ``{w : w[y]_z - y in Y_{Q,n}^sc}``.
    """
    orbits = enumerate_orbits(c, z) if orbits is None else orbits
    W = c.datum.weyl_group
    shifts = twist_shifts(c, z)
    for o in orbits:
        y = np.asarray(o.rep, dtype=np.int64)
        idx = np.array(o.stabilizer)
        diffs = W.matrices[idx] @ y + shifts[idx] - y
        if not np.all(_sc_member_many(c, diffs)):
            return False
    return True


def s_property(o: OrbitRecord) -> str:
    """``"certified"`` when the S-property is known to hold, else ``"unknown"``.

    Certified cases: splitting orbits, and for ``SL_2`` the orbit of
    ``n^* alpha^vee / 2`` when ``n^*`` is even.
    """
    if is_splitting(o)[0]:
        return "certified"
    c = o.cover
    R = c.datum
    if R.cartan_type == "A" and R.rank == 1 and R.flavor == "sc" and all(x == 0 for x in o.z):
        nstar = int(c.Y_Qn_basis[0, 0])
        if nstar % 2 == 0 and o.trivial and int(o.rep[0]) % nstar == nstar // 2:
            return "certified"
    return "unknown"
