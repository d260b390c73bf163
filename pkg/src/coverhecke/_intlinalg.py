"""Small exact integer/rational linear algebra helpers (Smith form, solving)."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp, hermite_normal_form


def as_int_matrix(a):
    return [[int(x) for x in row] for row in np.atleast_2d(np.asarray(a, dtype=object))]


def rational_inverse(a):
    """Inverse of a square integer matrix as a list of lists of Fractions."""
    n = len(a)
    rows = [[Fraction(int(x)) for x in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(a)]
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        rows[c], rows[p] = rows[p], rows[c]
        inv = 1 / rows[c][c]
        rows[c] = [x * inv for x in rows[c]]
        for i in range(n):
            if i != c and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return [row[n:] for row in rows]


def det_int(a) -> int:
    """Exact determinant of a square integer matrix."""
    if len(a) == 0:
        return 1
    return int(Matrix(as_int_matrix(a)).det(method="bareiss"))


def smith(a):
    """Smith decomposition ``S = U A V`` with unimodular ``U``, ``V``.

    Returns integer numpy arrays ``(S, U, V)`` (object dtype avoided; int64).
    """
    m = Matrix(as_int_matrix(a))
    S, U, V = smith_normal_decomp(m, domain=ZZ)
    conv = lambda M: np.array(M.tolist(), dtype=np.int64).reshape(M.shape)
    return conv(S), conv(U), conv(V)


def column_hnf(a):
    """Column-style Hermite normal form of a full-row-rank integer matrix.

    Columns of the result span the same lattice as the columns of ``a``.
    """
    m = Matrix(as_int_matrix(a))
    h = hermite_normal_form(m)
    return np.array(h.tolist(), dtype=np.int64).reshape(h.shape)


def solve_integer(a, b):
    """An integer solution ``u`` of ``a @ u = b``, or ``None`` if none exists.

    Unimodular column operations bring ``a`` to lower echelon form
    ``H = a V``; the triangular system is then solved by forward
    substitution with divisibility checks.
    """
    A = [[int(x) for x in row] for row in np.atleast_2d(np.asarray(a, dtype=object))] if len(a) else []
    b = [int(x) for x in b]
    if not A or not A[0]:
        return [] if not any(b) else None
    m, k = len(A), len(A[0])
    cols = [[A[i][j] for i in range(m)] for j in range(k)]
    V = [[int(i == j) for i in range(k)] for j in range(k)]  # V[j] is column j of V
    pivots = []  # (row, col)
    c0 = 0
    for i in range(m):
        if c0 == k:
            break
        # gcd-reduce row i over columns c0..k-1
        while True:
            nz = [j for j in range(c0, k) if cols[j][i] != 0]
            if len(nz) <= 1:
                break
            p = min(nz, key=lambda j: abs(cols[j][i]))
            for j in nz:
                if j != p:
                    f = cols[j][i] // cols[p][i]
                    cols[j] = [x - f * y for x, y in zip(cols[j], cols[p])]
                    V[j] = [x - f * y for x, y in zip(V[j], V[p])]
        nz = [j for j in range(c0, k) if cols[j][i] != 0]
        if nz:
            p = nz[0]
            cols[c0], cols[p] = cols[p], cols[c0]
            V[c0], V[p] = V[p], V[c0]
            pivots.append((i, c0))
            c0 += 1
    x = [0] * k
    piv_of_row = dict(pivots)
    for i in range(m):
        acc = b[i] - sum(cols[j][i] * x[j] for j in range(k) if x[j])
        if i in piv_of_row:
            j = piv_of_row[i]
            if acc % cols[j][i]:
                return None
            x[j] = acc // cols[j][i]
        elif acc != 0:
            return None
    return [sum(V[j][t] * x[j] for j in range(k)) for t in range(k)]


def kernel_basis_int(a):
    """A basis (as rows) of the integer kernel ``{u : a @ u = 0}``."""
    a = as_int_matrix(a)
    ncol = len(a[0])
    S, U, V = smith(a)
    rank = sum(1 for i in range(min(S.shape)) if S[i, i] != 0)
    return [[int(x) for x in V[:, j]] for j in range(rank, ncol)]
