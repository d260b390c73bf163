"""
Class functions on Weyl groups and closed-form Whittaker dimensions.

A class function is stored by value on an explicit subgroup of ``W``
(a sorted array of element indices).  Permutation characters of twisted
orbits, the alternating sums ``sigma_S`` of sign characters induced from
parabolic subgroups, the R-groups of unitary unramified principal series
and the quadratic character ``zeta_rho`` are built on top of it.

Two independent routes are provided wherever a dimension is computed:
characters induced through conjugacy-class counts, and direct
fixed-point counts combined with Frobenius reciprocity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from numbers import Rational

import numpy as np

from ._intlinalg import rational_inverse, solve_integer
from .cover import CoverSpec
from .exact import ConfigurationError, Cyclo
from .orbits import (OrbitRecord, as_coweight, enumerate_orbits, s_property,
                     twist_shifts)
from .rootdata import RootDatum, WeylGroup, build_root_datum

__all__ = [
    "ClassFunction",
    "RGroupSpec",
    "WhittakerDimension",
    "inner_product",
    "induce",
    "parabolic_subgroup",
    "perm_character",
    "permutation_character",
    "fixed_point_counts",
    "sigma_S",
    "whittaker_regular",
    "regular_dimension_table",
    "rgroup_registry",
    "rgroup_elements",
    "rgroup_characters",
    "rgroup_character",
    "chi_values",
    "check_chi",
    "zeta_rho",
    "whittaker_unitary",
    "unitary_dimension_table",
    "verify_uni_key",
    "uni_key_candidates",
    "twist_witness",
    "verify_twist_equiv",
    "verify_wh_equi",
]

THEOREM = "theorem"
FLAGGED = "hypothesis-not-verified"


def _weyl(obj) -> WeylGroup:
    if isinstance(obj, WeylGroup):
        return obj
    if isinstance(obj, CoverSpec):
        return obj.datum.weyl_group
    if isinstance(obj, RootDatum):
        return obj.weyl_group
    raise TypeError(f"cannot extract a Weyl group from {type(obj).__name__}")


def _conj(x):
    return x.conj() if isinstance(x, Cyclo) else x


def _exact(x):
    """Collapse rational cyclotomics to Fractions."""
    if isinstance(x, Cyclo) and x.is_rational():
        return x.to_fraction()
    return x


def _sign_array(W: WeylGroup) -> np.ndarray:
    cache = W.__dict__
    if "_sign_values" not in cache:
        cache["_sign_values"] = np.array([(-1) ** w.length for w in W.elements], dtype=np.int64)
    return cache["_sign_values"]


# -- class functions -----------------------------------------------------------

class ClassFunction:
    """A function on a subgroup ``H`` of ``W``, stored elementwise.

    Parameters
    ----------
    group : WeylGroup
        Ambient Weyl group.
    support : array_like of int
        Indices (into ``group.elements``) of the elements of ``H``.
    values : sequence
        Values aligned with the sorted ``support``; integers are kept in an
        ``int64`` array, anything else (Fractions, :class:`Cyclo`) in an
        object array.
    """

    __slots__ = ("group", "support", "values")

    def __init__(self, group: WeylGroup, support, values):
        support = np.asarray(support, dtype=np.int64)
        vals = list(values) if not isinstance(values, np.ndarray) else values
        if len(vals) != len(support):
            raise ValueError("support and values differ in length")
        order = np.argsort(support, kind="stable")
        self.group = group
        self.support = support[order]
        if isinstance(vals, np.ndarray) and vals.dtype != object:
            self.values = vals.astype(np.int64)[order]
        elif all(isinstance(v, (int, np.integer)) for v in vals):
            self.values = np.array([int(v) for v in vals], dtype=np.int64)[order]
        else:
            arr = np.empty(len(vals), dtype=object)
            arr[:] = [_exact(v) for v in vals]
            self.values = arr[order]

    # constructors
    @classmethod
    def constant(cls, group, value, support=None):
        support = np.arange(len(group)) if support is None else np.asarray(support)
        return cls(group, support, [value] * len(support))

    @classmethod
    def trivial(cls, group, support=None):
        return cls.constant(group, 1, support)

    @classmethod
    def sign(cls, group, support=None):
        support = np.arange(len(group)) if support is None else np.asarray(support, dtype=np.int64)
        return cls(group, support, _sign_array(group)[support])

    @classmethod
    def regular(cls, group, support=None):
        support = np.arange(len(group)) if support is None else np.asarray(support, dtype=np.int64)
        vals = np.where(support == 0, len(support), 0)
        return cls(group, support, vals)

    # access
    @property
    def order(self) -> int:
        return int(len(self.support))

    def _position(self, k: int) -> int:
        p = int(np.searchsorted(self.support, k))
        if p >= len(self.support) or self.support[p] != k:
            raise KeyError(f"element {k} is not in the support")
        return p

    def __call__(self, w):
        k = w if isinstance(w, (int, np.integer)) else self.group.index(w)
        return self.values[self._position(int(k))]

    @property
    def degree(self):
        return self(0)

    def restrict(self, subgroup) -> "ClassFunction":
        H = np.unique(np.asarray(subgroup, dtype=np.int64))
        pos = np.searchsorted(self.support, H)
        if np.any(pos >= len(self.support)) or np.any(self.support[np.minimum(pos, len(self.support) - 1)] != H):
            raise ConfigurationError("incompatible groups: restriction target is not a subset of the support")
        return ClassFunction(self.group, H, self.values[pos])

    def _check_compatible(self, other):
        if self.group is not other.group:
            raise ConfigurationError("incompatible groups")
        if not np.array_equal(self.support, other.support):
            raise ConfigurationError("class functions live on different subgroups")

    # arithmetic
    def _combine(self, other, op):
        if isinstance(other, ClassFunction):
            self._check_compatible(other)
            ov = other.values
        else:
            ov = [other] * self.order
        a = self.values if self.values.dtype != object else list(self.values)
        if self.values.dtype != object and isinstance(ov, np.ndarray) and ov.dtype != object:
            return ClassFunction(self.group, self.support, op(self.values, ov))
        return ClassFunction(self.group, self.support, [op(x, y) for x, y in zip(a, ov)])

    def __add__(self, other):
        return self._combine(other, lambda x, y: x + y)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, lambda x, y: x - y)

    def __neg__(self):
        return self._combine(-1, lambda x, y: x * y)

    def __mul__(self, other):
        return self._combine(other, lambda x, y: x * y)

    __rmul__ = __mul__

    def conj(self) -> "ClassFunction":
        if self.values.dtype != object:
            return self
        return ClassFunction(self.group, self.support, [_conj(v) for v in self.values])

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return (self.group is other.group and np.array_equal(self.support, other.support)
                and all(x == y for x, y in zip(self.values, other.values)))

    def __hash__(self):
        return id(self)

    def is_class_function(self) -> bool:
        """Whether the values are invariant under conjugation within the support."""
        W = self.group
        sup = self.support
        supset = set(int(k) for k in sup)
        inv = W.inverse_index
        for g in sup:
            conj = W.multiply(W.multiply(np.full(len(sup), g), sup), np.full(len(sup), inv[g]))
            if not supset.issuperset(int(k) for k in conj):
                raise ConfigurationError("support is not a subgroup")
            pos = np.searchsorted(sup, conj)
            if not all(x == y for x, y in zip(self.values, self.values[pos])):
                return False
        return True

    def to_json(self) -> dict:
        def enc(v):
            if isinstance(v, Cyclo):
                return v.to_json()
            if isinstance(v, Fraction):
                return int(v) if v.denominator == 1 else str(v)
            return int(v)
        return {"support": [int(k) for k in self.support], "values": [enc(v) for v in self.values]}

    def __repr__(self):
        return f"ClassFunction(|H|={self.order}, degree={self.degree})"


def inner_product(f: ClassFunction, g: ClassFunction, subgroup=None):
    """``|H|^{-1} sum_{h in H} f(h) conj(g(h))`` as an exact number.

    Examples
    --------
    >>> W = build_root_datum("A", 2).weyl_group
    >>> inner_product(ClassFunction.sign(W), ClassFunction.regular(W))
    Fraction(1, 1)
    """
    if f.group is not g.group:
        raise ConfigurationError("incompatible groups")
    if subgroup is None:
        if not np.array_equal(f.support, g.support):
            raise ConfigurationError("incompatible groups: pass the subgroup explicitly")
        fr, gr = f, g
    else:
        fr, gr = f.restrict(subgroup), g.restrict(subgroup)
    N = fr.order
    if fr.values.dtype != object and gr.values.dtype != object:
        return Fraction(int(np.dot(fr.values, gr.values)), N)
    total = sum((a * _conj(b) for a, b in zip(fr.values, gr.values)), Fraction(0))
    return _exact(total / N) if isinstance(total, Cyclo) else Fraction(total) / N


def parabolic_subgroup(W: WeylGroup, J) -> np.ndarray:
    """Indices of ``W(J)``, the subgroup generated by the simple reflections in ``J``."""
    J = tuple(sorted(set(int(j) for j in J)))
    cache = W.__dict__.setdefault("_parabolic_cache", {})
    if J not in cache:
        cache[J] = np.array(W.subgroup([W.simple(j) for j in J]), dtype=np.int64)
    return cache[J]


def induce(f: ClassFunction) -> ClassFunction:
    """Induce a function on ``H`` to all of ``W``.

    Uses ``Ind f (w) = |W| / (|K_w| |H|) * sum_{x in K_w cap H} f(x)`` with
    ``K_w`` the conjugacy class of ``w``.
    """
    W = f.group
    lab = W.class_labels
    ncls = int(lab.max()) + 1
    sizes = np.bincount(lab, minlength=ncls)
    H = f.order
    if f.values.dtype != object:
        sums = np.zeros(ncls, dtype=np.int64)
        np.add.at(sums, lab[f.support], f.values)
        num = sums * len(W)
        den = sizes * H
        if np.all(num % den == 0):
            return ClassFunction(W, np.arange(len(W)), (num // den)[lab])
        vals = [Fraction(int(a), int(b)) for a, b in zip(num, den)]
        return ClassFunction(W, np.arange(len(W)), [vals[c] for c in lab])
    sums = [Fraction(0)] * ncls
    for k, v in zip(f.support, f.values):
        sums[lab[k]] = sums[lab[k]] + v
    vals = [_exact(s * Fraction(len(W), int(sizes[c]) * H)) for c, s in enumerate(sums)]
    return ClassFunction(W, np.arange(len(W)), [vals[c] for c in lab])


# -- permutation characters ----------------------------------------------------

def fixed_point_counts(o: OrbitRecord, indices=None, chunk: int = 200_000) -> np.ndarray:
    """Number of orbit points fixed by ``w[.]_z`` for each ``w`` in ``indices``."""
    c = o.cover
    W = c.datum.weyl_group
    idx = np.arange(len(W)) if indices is None else np.asarray(indices, dtype=np.int64)
    pts = o.element_vectors()  # m x d
    m, d = pts.shape
    shifts = twist_shifts(c, o.z)
    out = np.zeros(len(idx), dtype=np.int64)
    step = max(1, chunk // max(m, 1))
    for s in range(0, len(idx), step):
        part = idx[s:s + step]
        imgs = W.matrices[part] @ pts.T + shifts[part][:, :, None]  # k x d x m
        diffs = (imgs - pts.T[None, :, :]).transpose(0, 2, 1).reshape(-1, d)
        fixed = o.quotient.contains_many(diffs).reshape(len(part), m)
        out[s:s + step] = fixed.sum(axis=1)
    return out


def perm_character(c: CoverSpec, orbit: OrbitRecord, z=None, method: str = "induced") -> ClassFunction:
    """Permutation character of ``W`` acting on ``orbit`` by ``w[.]_z``.

    ``method="induced"`` induces the trivial character from the stabilizer;
    ``method="fixed_points"`` counts fixed points directly.

    Examples
    --------
    >>> from coverhecke.cover import make_cover
    >>> c = make_cover("A", 2, 2)
    >>> o = enumerate_orbits(c)[1]
    >>> sorted(set(int(v) for v in perm_character(c, o).values))
    [0, 1, 3]
    """
    if z is not None and as_coweight(c, z) != tuple(orbit.z):
        raise ConfigurationError("orbit was enumerated for a different twist")
    W = c.datum.weyl_group
    if method == "induced":
        return induce(ClassFunction.trivial(W, orbit.stabilizer))
    if method == "fixed_points":
        return ClassFunction(W, np.arange(len(W)), fixed_point_counts(orbit))
    raise ConfigurationError(f"unknown method {method!r}")


def permutation_character(c: CoverSpec, z=None, orbits=None, method: str = "induced") -> ClassFunction:
    """Character of ``W`` on all of ``X_{Q,n}`` (sum over the ``(W, z)``-orbits)."""
    orbits = enumerate_orbits(c, z) if orbits is None else orbits
    total = None
    for o in orbits:
        chi = perm_character(c, o, method=method)
        total = chi if total is None else total + chi
    return total


# -- regular unramified principal series ----------------------------------------

def _induced_sign(W: WeylGroup, J) -> ClassFunction:
    J = tuple(sorted(set(J)))
    cache = W.__dict__.setdefault("_induced_sign_cache", {})
    if J not in cache:
        cache[J] = induce(ClassFunction.sign(W, parabolic_subgroup(W, J)))
    return cache[J]


def _check_subsets(W, phi_chi, S):
    r = W.datum.rank
    phi = set(int(i) for i in phi_chi)
    S = set(int(i) for i in S)
    if not phi <= set(range(r)):
        raise ConfigurationError("Phi(chi) must be a set of simple root indices")
    if not S <= phi:
        raise ConfigurationError("S must be contained in Phi(chi)")
    return sorted(phi), sorted(S)


def sigma_S(obj, phi_chi, S) -> ClassFunction:
    """``sum_{S <= S' <= Phi(chi)} (-1)^{|S' - S|} Ind_{W(S')}^W sign``.

    Simple roots are given by 0-based index.

    Examples
    --------
    >>> W = build_root_datum("A", 1).weyl_group
    >>> [int(v) for v in sigma_S(W, [0], []).values]
    [1, 1]
    """
    W = _weyl(obj)
    phi, S = _check_subsets(W, phi_chi, S)
    rest = [i for i in phi if i not in S]
    total = ClassFunction.constant(W, 0)
    for k in range(len(rest) + 1):
        for extra in combinations(rest, k):
            term = _induced_sign(W, tuple(S) + extra)
            total = total + term if k % 2 == 0 else total - term
    return total


@dataclass(frozen=True)
class WhittakerDimension:
    """A Whittaker dimension together with the status of its hypotheses."""

    value: int
    hypotheses: str = THEOREM
    note: str = ""

    def __int__(self):
        return self.value

    @property
    def flagged(self) -> bool:
        return self.hypotheses != THEOREM

    def to_json(self) -> dict:
        out = {"dim": self.value, "hypotheses": self.hypotheses}
        if self.note:
            out["note"] = self.note
        return out


def _as_dim(x) -> int:
    x = _exact(x)
    if isinstance(x, Cyclo) or Fraction(x).denominator != 1 or x < 0:
        raise ArithmeticError(f"inner product {x!r} is not a nonnegative integer")
    return int(x)


def whittaker_regular(c: CoverSpec, phi_chi, S, orbit: OrbitRecord, method: str = "character") -> WhittakerDimension:
    """``dim Wh_psi(pi_S)_O = <sigma_S, sigma_O>_W`` for a splitting orbit.

    ``method="character"`` pairs the induced characters over all of ``W``;
    ``method="frobenius"`` sums ``<sign, Res sigma_O>_{W(S')}`` computed by
    direct fixed-point counts on each parabolic subgroup.
    """
    W = c.datum.weyl_group
    phi, S = _check_subsets(W, phi_chi, S)
    if method == "character":
        val = inner_product(sigma_S(W, phi, S), perm_character(c, orbit))
    elif method == "frobenius":
        rest = [i for i in phi if i not in S]
        val = Fraction(0)
        for k in range(len(rest) + 1):
            for extra in combinations(rest, k):
                H = parabolic_subgroup(W, tuple(S) + extra)
                fixed = fixed_point_counts(orbit, H)
                term = Fraction(int(np.dot(_sign_array(W)[H], fixed)), len(H))
                val += term if k % 2 == 0 else -term
    else:
        raise ConfigurationError(f"unknown method {method!r}")
    if orbit.splitting:
        return WhittakerDimension(_as_dim(val))
    return WhittakerDimension(_as_dim(val), FLAGGED, "orbit is not splitting")


def regular_dimension_table(c: CoverSpec, phi_chi, orbits=None) -> list:
    """Rows ``{"S", "orbit_rep", "dim", "hypotheses"}`` for all ``S`` and orbits."""
    W = c.datum.weyl_group
    phi, _ = _check_subsets(W, phi_chi, [])
    orbits = enumerate_orbits(c) if orbits is None else orbits
    chars = [perm_character(c, o) for o in orbits]
    rows = []
    for k in range(len(phi) + 1):
        for S in combinations(phi, k):
            sig = sigma_S(W, phi, S)
            for o, ch in zip(orbits, chars):
                d = WhittakerDimension(_as_dim(inner_product(sig, ch)),
                                       THEOREM if o.splitting else FLAGGED)
                rows.append({"S": list(S), "orbit_rep": [int(x) for x in o.rep],
                             "dim": d.value, "hypotheses": d.hypotheses})
    return rows


# -- R-groups -------------------------------------------------------------------

@dataclass(frozen=True)
class RGroupSpec:
    """A nontrivial R-group up to ``W``-conjugacy.

    ``generators`` are words in 0-based simple reflection indices.  The
    constrained values are ``chi_{alpha_i} = xi**k`` for ``(i, k)`` in
    ``exponents`` and a primitive ``root_order``-th root of unity ``xi``;
    the remaining simple roots are unconstrained.
    """

    cartan_type: str
    rank: int
    name: str
    label: str
    generators: tuple
    orders: tuple
    root_order: int
    exponents: tuple = field(default=())

    def to_json(self) -> dict:
        return {"type": self.cartan_type, "rank": self.rank, "name": self.name, "label": self.label,
                "generators": [list(g) for g in self.generators], "orders": list(self.orders),
                "root_order": self.root_order, "exponents": [list(e) for e in self.exponents]}


def _odd(upto):
    """0-based indices of the simple roots alpha_1, alpha_3, ... with 1-based index <= upto."""
    return tuple(range(0, upto, 2))


def rgroup_registry(cartan_type: str, rank: int) -> list:
    """All nontrivial R-groups of unitary unramified principal series.

    Examples
    --------
    >>> [g.name for g in rgroup_registry("A", 5)]
    ['Z/2', 'Z/3', 'Z/6']
    >>> [g.name for g in rgroup_registry("D", 5)]
    ['Z/2', 'Z/4']
    """
    t, r = cartan_type.upper(), int(rank)
    out = []
    if t == "A" or (t in "BC" and r == 1):
        for d in range(2, r + 2):
            if (r + 1) % d:
                continue
            word = tuple(j * d + s for j in range((r + 1) // d) for s in range(d - 1))
            exps = tuple((i, 1) for i in word)
            out.append(RGroupSpec("A", r, f"Z/{d}", f"{(r + 1) // d} cycles of length {d}",
                                  (word,), (d,), d, exps))
    elif t == "B":
        word = _odd(r) if r % 2 == 0 else _odd(r - 2) + (r - 1,)
        out.append(RGroupSpec(t, r, "Z/2", "product of orthogonal simple reflections",
                              (word,), (2,), 2, tuple((i, 1) for i in word)))
    elif t == "C":
        out.append(RGroupSpec(t, r, "Z/2", "long simple reflection",
                              ((r - 1,),), (2,), 2, ((r - 1, 1),)))
    elif t == "D":
        tail = (r - 2, r - 1)
        out.append(RGroupSpec(t, r, "Z/2", "w_{r-1} w_r", (tail,), (2,), 2, ((r - 2, 1), (r - 1, 1))))
        if r % 2 == 0:
            odd = _odd(r)
            out.append(RGroupSpec(t, r, "Z/2", "w_1 w_3 ... w_{r-1}", (odd,), (2,), 2,
                                  tuple((i, 1) for i in odd)))
            exps = tuple(sorted(set((i, 1) for i in odd + tail)))
            out.append(RGroupSpec(t, r, "Z/2 x Z/2", "both", (odd, tail), (2, 2), 2, exps))
        else:
            odd = _odd(r - 2)
            word = odd + tail
            exps = tuple((i, 2) for i in odd) + ((r - 2, 1), (r - 1, 3))
            out.append(RGroupSpec(t, r, "Z/4", "w_1 w_3 ... w_{r-2} w_{r-1} w_r", (word,), (4,), 4, exps))
    elif t == "E" and r == 6:
        out.append(RGroupSpec(t, r, "Z/3", "w_1 w_3 w_6 w_5", ((0, 2, 5, 4),), (3,), 3,
                              ((0, 1), (2, 1), (4, 2), (5, 2))))
    elif t == "E" and r == 7:
        out.append(RGroupSpec(t, r, "Z/2", "w_2 w_5 w_7", ((1, 4, 6),), (2,), 2,
                              ((1, 1), (4, 1), (6, 1))))
    elif t not in "EFG":
        raise ConfigurationError(f"unknown type {cartan_type}")
    return out


def rgroup_elements(W: WeylGroup, rg: RGroupSpec) -> list:
    """Pairs ``(exponents, index)`` enumerating ``R_chi`` as a product of cyclic groups."""
    gens = [W.index(W.from_word(g)) for g in rg.generators]
    for g, o in zip(gens, rg.orders):
        k, p = 1, g
        while p != 0:
            p = int(W.multiply(p, g))
            k += 1
        if k != o:
            raise AssertionError(f"generator has order {k}, expected {o}")
    for a, b in combinations(gens, 2):
        if int(W.multiply(a, b)) != int(W.multiply(b, a)):
            raise AssertionError("R-group generators do not commute")
    out = []
    for exps in product(*[range(o) for o in rg.orders]):
        k = 0
        for g, e in zip(gens, exps):
            for _ in range(e):
                k = int(W.multiply(k, g))
        out.append((exps, k))
    if len(set(k for _, k in out)) != len(out):
        raise AssertionError("R-group generators are not independent")
    return out


def rgroup_characters(rg: RGroupSpec) -> list:
    """Labels of the irreducible characters: ``k`` with ``sigma(g_j) = zeta_{o_j}^{k_j}``."""
    return list(product(*[range(o) for o in rg.orders]))


def rgroup_character(W: WeylGroup, rg: RGroupSpec, k) -> ClassFunction:
    """The irreducible character of ``R_chi`` with label ``k``."""
    k = tuple(int(x) for x in k)
    if len(k) != len(rg.orders):
        raise ConfigurationError("character label has wrong length")
    idx, vals = [], []
    for exps, w in rgroup_elements(W, rg):
        v = Cyclo.one()
        for e, kj, o in zip(exps, k, rg.orders):
            v = v * Cyclo.root(o, (e * kj) % o)
        idx.append(w)
        vals.append(v)
    return ClassFunction(W, idx, vals)


def chi_values(rg: RGroupSpec, xi_power: int = 1, free=1) -> tuple:
    """An admissible value tuple ``(chi_{alpha_i})_i`` for ``rg``.

    ``xi = zeta_d ** xi_power`` must be primitive; unconstrained simple
    roots receive ``free``.
    """
    d = rg.root_order
    if np.gcd(int(xi_power), d) != 1:
        raise ConfigurationError("xi_power must give a primitive root of unity")
    vals = [free if isinstance(free, Cyclo) else Cyclo.rational(free)] * rg.rank
    for i, k in rg.exponents:
        vals[i] = Cyclo.root(d, (k * xi_power) % d)
    return tuple(vals)


def _coroot_coords(R: RootDatum, v):
    """Coordinates of ``v`` in the simple coroots (Fractions)."""
    A = R.simple_coroots.T.tolist()  # dim x rank
    if R.dim != R.rank:
        raise ConfigurationError("R-groups are implemented for semisimple data only")
    inv = rational_inverse(A)
    return [sum(inv[i][j] * int(v[j]) for j in range(R.dim)) for i in range(R.rank)]


def _s_chi(c: CoverSpec, chi, v):
    """Value of the Satake character at ``v`` in the lattice of modified simple coroots."""
    R = c.datum
    ns = c.n_simple
    out = Cyclo.one()
    for i, a in enumerate(_coroot_coords(R, v)):
        k = a / ns[i]
        if k.denominator != 1:
            raise ConfigurationError("vector is not in the modified coroot lattice")
        out = out * (chi[i] ** int(k))
    return out


def check_chi(c: CoverSpec, rg: RGroupSpec, chi) -> None:
    """Raise unless ``chi`` satisfies the constraints of ``rg`` and is fixed by ``R_chi``."""
    R = c.datum
    if (R.cartan_type, R.rank) != (rg.cartan_type, rg.rank) and not (R.rank == 1 and rg.rank == 1):
        raise ConfigurationError("R-group belongs to a different root system")
    if len(chi) != R.rank:
        raise ConfigurationError("need one chi-value per simple root")
    chi = [x if isinstance(x, Cyclo) else Cyclo.rational(x) for x in chi]
    for x in chi:
        if x * x.conj() != 1:
            raise ConfigurationError("chi-values must be unitary")
    d = rg.root_order
    ok = any(all(chi[i] == Cyclo.root(d, (k * j) % d) for i, k in rg.exponents)
             for j in range(1, d) if np.gcd(j, d) == 1)
    if rg.exponents and not ok:
        raise ConfigurationError("chi-values violate the R-group constraints")
    W = R.weyl_group
    ns = c.n_simple
    for word in rg.generators:
        w = W.from_word(word)
        winv = w.inverse()
        for j in range(R.rank):
            y = ns[j] * R.simple_coroots[j]
            if _s_chi(c, chi, winv.matrix @ y) != chi[j]:
                raise ConfigurationError("chi is not fixed by the R-group generators")


def zeta_rho(c: CoverSpec, rg: RGroupSpec, chi=None) -> ClassFunction:
    """``zeta(w) = s_chi(w(rho~) - rho~)`` on ``R_chi``, with ``rho~`` half the sum of modified positive coroots.

    Examples
    --------
    >>> from coverhecke.cover import make_cover
    >>> c = make_cover("E", 6, 1)
    >>> rg = rgroup_registry("E", 6)[0]
    >>> [int(v) for v in zeta_rho(c, rg).values]
    [1, 1, 1]
    """
    if not c.is_very_saturated:
        raise ConfigurationError("zeta_rho needs a very saturated cover")
    chi = chi_values(rg) if chi is None else tuple(x if isinstance(x, Cyclo) else Cyclo.rational(x) for x in chi)
    check_chi(c, rg, chi)
    W = c.datum.weyl_group
    rho2 = (c.modified_positive_coroots).sum(axis=0)
    idx, vals = [], []
    for _, k in rgroup_elements(W, rg):
        diff2 = W.elements[k].matrix @ rho2 - rho2
        if np.any(diff2 % 2):
            raise AssertionError("w(rho~) - rho~ is not integral")
        idx.append(k)
        vals.append(_s_chi(c, chi, diff2 // 2))
    return ClassFunction(W, idx, vals)


def _unitary_hypotheses(c, orbit):
    if not c.is_very_saturated:
        return FLAGGED, "cover is not very saturated"
    if not c.short_Q_is_one():
        return FLAGGED, "Q(short coroot) != 1"
    if s_property(orbit) != "certified":
        return FLAGGED, "S-property not certified"
    return THEOREM, ""


def whittaker_unitary(c: CoverSpec, rg: RGroupSpec, chi, sigma, orbit: OrbitRecord) -> WhittakerDimension:
    """``<sigma (x) zeta_rho, Res_{R_chi} sigma_O>_{R_chi}``.

    ``sigma`` is a character label (see :func:`rgroup_characters`) or a
    :class:`ClassFunction` on ``R_chi``.
    """
    W = c.datum.weyl_group
    zeta = zeta_rho(c, rg, chi)
    sig = sigma if isinstance(sigma, ClassFunction) else rgroup_character(W, rg, sigma)
    Rg = zeta.support
    res = ClassFunction(W, Rg, fixed_point_counts(orbit, Rg))
    val = inner_product(sig * zeta, res)
    hyp, note = _unitary_hypotheses(c, orbit)
    return WhittakerDimension(_as_dim(val), hyp, note)


def unitary_dimension_table(c: CoverSpec, rg: RGroupSpec, chi=None, orbits=None) -> list:
    """Rows ``{"sigma", "orbit_rep", "dim", "hypotheses"}`` over all characters and orbits."""
    orbits = enumerate_orbits(c) if orbits is None else orbits
    chi = chi_values(rg) if chi is None else chi
    rows = []
    for k in rgroup_characters(rg):
        for o in orbits:
            d = whittaker_unitary(c, rg, chi, k, o)
            rows.append({"sigma": list(k), "orbit_rep": [int(x) for x in o.rep],
                         "dim": d.value, "hypotheses": d.hypotheses})
    return rows


# -- brute-force checks ----------------------------------------------------------

def uni_key_candidates(c: CoverSpec):
    """Dominant ``y`` in ``Y`` with ``<alpha^dagger, y> = n``, with their ``Delta_{a,y}``.

    ``Delta_{a,y}`` uses label ``0`` for ``alpha_0`` and ``i`` (1-based) for
    ``alpha_i``.
    """
    R = c.datum
    m = R.highest_root_coeffs
    r = R.rank
    out = []

    def rec(i, left, acc):
        if i == r:
            if left == 0:
                y = R.coweight(acc)
                if R.in_Y(y):
                    yv = np.array([int(x) for x in y], dtype=np.int64)
                    delta = (0,) + tuple(j + 1 for j in range(r) if acc[j] == 0)
                    out.append((yv, delta))
            return
        for k in range(left // m[i] + 1):
            rec(i + 1, left - k * m[i], acc + [k])

    rec(0, c.n, [])
    return out


def verify_uni_key(c: CoverSpec, rg: RGroupSpec) -> dict:
    """Exhaustive check that no conjugate of ``R_chi`` meets ``<w_alpha : alpha in Delta_{a,y}>``.

    Every nontrivial element of ``R_chi`` is tested for a ``W``-conjugate in
    the reflection subgroup, which covers all conjugates of ``R_chi``.
    """
    R = c.datum
    W = R.weyl_group
    if not c.is_very_saturated:
        raise ConfigurationError("verify_uni_key needs a very saturated cover")
    lab = W.class_labels
    r_classes = {int(lab[k]) for _, k in rgroup_elements(W, rg) if k != 0}
    top = W.reflection(len(R.positive_roots) - 1)
    cands = uni_key_candidates(c)
    report = {"relation": "unikey", "cover": c.to_json(), "rgroup": rg.to_json(),
              "vectors_checked": len(cands), "vacuous": not cands, "candidates": []}
    bad = None
    for y, delta in cands:
        gens = [top if j == 0 else W.simple(j - 1) for j in delta]
        H = W.subgroup(gens)
        meet = sorted(set(int(lab[k]) for k in H if k != 0) & r_classes)
        report["candidates"].append({"y": [int(x) for x in y], "delta": list(delta), "ok": not meet})
        if meet and bad is None:
            bad = {"y": [int(x) for x in y], "delta": list(delta)}
    report["status"] = "pass" if bad is None else "fail"
    if bad is not None:
        report["counterexample"] = bad
    return report


def twist_witness(c: CoverSpec, z):
    """Some ``y_z`` in ``Y`` with ``y_z + z`` in ``nP``, or ``None``.

    Multiples ``k omega_i`` of single fundamental coweights are tried first
    (this covers every cyclic ``P/Y``); otherwise a general integer system is
    solved.
    """
    R = c.datum
    zc = as_coweight(c, z)
    n = c.n
    if R.in_Y(zc):
        return np.array([-int(x) for x in zc], dtype=np.int64)
    idx = R.index_of_connection if R.flavor != "GL" else 1
    for i in range(R.rank):
        om = R.fundamental_coweight(i)
        for k in range(idx):
            y = [n * k * a - b for a, b in zip(om, zc)]
            if R.in_Y(y):
                return np.array([int(x) for x in y], dtype=np.int64)
    # general case: n * Omega * a + t = z with a, t integral
    Om = [R.fundamental_coweight(i) for i in range(R.rank)]
    den = 1
    for col in Om + [list(zc)]:
        for x in col:
            den = den * Fraction(x).denominator // np.gcd(den, Fraction(x).denominator)
    A = [[int(den * n * Om[i][row]) for i in range(R.rank)] + [den * int(row == j) for j in range(R.dim)]
         for row in range(R.dim)]
    b = [int(den * x) for x in zc]
    sol = solve_integer(A, b)
    if sol is None:
        return None
    return np.array([-int(t) for t in sol[R.rank:]], dtype=np.int64)


def verify_twist_equiv(c: CoverSpec, z) -> dict:
    """Compare ``sigma_[z]`` with ``sigma_[0]`` and test the shift ``y -> y + y_z``.

    The character comparison, the equivariance of the shift and the orbit
    bijection are checked independently of each other.
    """
    X = c.X
    W = c.datum.weyl_group
    zc = as_coweight(c, z)
    orb0 = enumerate_orbits(c)
    orbz = enumerate_orbits(c, zc)
    ch0 = permutation_character(c, orbits=orb0, method="fixed_points")
    chz = permutation_character(c, orbits=orbz, method="fixed_points")
    iso = ch0 == chz
    yz = twist_witness(c, zc)
    report = {"relation": "twist", "cover": c.to_json(), "z": [str(x) for x in zc],
              "isomorphic": bool(iso), "y_z": None if yz is None else [int(x) for x in yz]}
    if yz is None:
        report.update(equivariant=False, orbit_bijection=False,
                      status="fail" if c.is_very_saturated else "inconclusive")
        return report
    pts = X.representatives()
    shifted = pts + yz
    shifts = twist_shifts(c, zc)
    equi = True
    for k in range(len(W)):
        M = W.elements[k].matrix
        lhs = shifted @ M.T + shifts[k]
        rhs = pts @ M.T + yz
        if not np.all(X.contains_many(lhs - rhs)):
            equi = False
            break
    target = {frozenset(int(i) for i in o.elements) for o in orbz}
    image = {frozenset(int(i) for i in X.encode_coords_many(X.to_ambient_many(o.element_vectors() + yz)))
             for o in orb0}
    bij = image == target
    report.update(equivariant=bool(equi), orbit_bijection=bool(bij),
                  vectors_checked=int(len(pts)),
                  status="pass" if (iso and equi and bij) else "fail")
    return report


def verify_wh_equi(c: CoverSpec, rg: RGroupSpec, chi=None) -> dict:
    """Orbitwise comparison of the two conductor normalisations.

    For each ``sigma`` and ``W``-orbit ``O`` the pairing
    ``<sigma zeta^{-1}, sigma_[0]^O>`` is compared with
    ``<sigma_[-rho]^{m(O)}, sigma zeta^{-1}>`` where ``m`` is the shift by
    ``y_{-rho}``; the right side is computed on the ``(W, -rho)``-orbits.
    """
    if not c.is_oasitic:
        raise ConfigurationError("verify_wh_equi needs an oasitic cover")
    if any(o != 2 for o in rg.orders):
        raise ConfigurationError("verify_wh_equi needs R_chi of exponent 2")
    X = c.X
    W = c.datum.weyl_group
    chi = chi_values(rg) if chi is None else chi
    zeta = zeta_rho(c, rg, chi)
    zinv = zeta.conj()
    Rg = zeta.support
    yz = twist_witness(c, "-rho")
    orb0 = enumerate_orbits(c)
    orbr = enumerate_orbits(c, "-rho")
    by_set = {frozenset(int(i) for i in o.elements): o for o in orbr}
    rows, bad = [], None
    for o in orb0:
        img = frozenset(int(i) for i in X.encode_coords_many(X.to_ambient_many(o.element_vectors() + yz)))
        target = by_set.get(img)
        if target is None:
            bad = {"orbit_rep": [int(x) for x in o.rep], "reason": "shift does not map onto a (W,-rho)-orbit"}
            break
        left_char = ClassFunction(W, Rg, fixed_point_counts(o, Rg))
        right_char = ClassFunction(W, Rg, fixed_point_counts(target, Rg))
        for k in rgroup_characters(rg):
            s = rgroup_character(W, rg, k) * zinv
            lhs = inner_product(s, left_char)
            rhs = inner_product(right_char, s)
            rows.append({"sigma": list(k), "orbit_rep": [int(x) for x in o.rep],
                         "lhs": str(lhs), "rhs": str(rhs)})
            if lhs != rhs and bad is None:
                bad = rows[-1]
    report = {"relation": "whequi", "cover": c.to_json(), "rgroup": rg.to_json(),
              "y_minus_rho": [int(x) for x in yz], "vectors_checked": len(rows), "rows": rows,
              "status": "pass" if bad is None else "fail"}
    if bad is not None:
        report["counterexample"] = bad
    return report
