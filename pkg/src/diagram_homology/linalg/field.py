"""Rank, kernels and images over the fields Q and F_p."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..rings import INTEGERS_MOD, Ring
from . import kernels
from .sparse import MatrixError, SparseMatrix

# large prime used for the fast lower bound on rational ranks
_CHECK_PRIME = 2147483647


def require_field(ring: Ring) -> None:
    if not ring.is_field:
        raise MatrixError(f"{ring} is not a field")


def dense_rank_q(rows) -> int:
    """Exact rank of a small dense matrix of integers or fractions."""
    A = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][c]
        for i in range(rank + 1, len(A)):
            if A[i][c]:
                f = A[i][c] / p
                A[i] = [a - f * b for a, b in zip(A[i], A[rank])]
        rank += 1
    return rank


def modp_rank(M: SparseMatrix, p: int, upper_bound: int | None = None, backend: str | None = None) -> int:
    data = M.data % p if M.integral else np.array([int(x) % p for x in M.data], dtype=np.int64)
    eng = kernels.modp_echelon(M.rows, p, backend)
    eng.add_csc(M.indptr, M.indices, data, -1 if upper_bound is None else upper_bound)
    return eng.rank


def rank(M: SparseMatrix, upper_bound: int | None = None) -> int:
    """Rank over a field.

    ``upper_bound`` is an a priori bound (e.g. the kernel dimension of the next
    differential); elimination stops as soon as it is reached.
    """
    require_field(M.ring)
    if M.nnz == 0:
        return 0
    if M.ring.kind == INTEGERS_MOD:
        return modp_rank(M, M.ring.modulus, upper_bound)
    from .snf import integer_rank

    Z = M.scale_columns_to_integers()
    # rank mod p never exceeds the rational rank, so hitting the bound settles it
    bound = min(M.rows, M.cols) if upper_bound is None else min(upper_bound, M.rows, M.cols)
    lower = modp_rank(Z, _CHECK_PRIME, bound)
    if lower == bound:
        return lower
    return integer_rank(Z, upper_bound)


# -- dense routines -----------------------------------------------------------


def rref_modp(A: np.ndarray, p: int):
    """Reduced row echelon form mod p of a dense int64 array (copied).

    Returns ``(R, pivot_columns)``; the first ``len(pivot_columns)`` rows of
    ``R`` are the nonzero rows.
    """
    R = np.array(A, dtype=np.int64) % p
    m, n = R.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(R[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        inv = pow(int(R[r, c]), -1, p)
        R[r] = (R[r] * inv) % p
        col = R[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if len(rows):
            R[rows] = (R[rows] - np.outer(col[rows], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rref_fraction(A):
    R = [[Fraction(x) for x in row] for row in A]
    m = len(R)
    n = len(R[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        p = R[r][c]
        R[r] = [x / p for x in R[r]]
        for i in range(m):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def _dense(M: SparseMatrix):
    if M.ring.kind == INTEGERS_MOD:
        return M._scipy().toarray()
    return M.to_dense()


def _rref(M: SparseMatrix):
    if M.ring.kind == INTEGERS_MOD:
        R, piv = rref_modp(_dense(M), M.ring.modulus)
        return [[int(x) for x in row] for row in R.tolist()], piv
    return rref_fraction(_dense(M))


def kernel_basis(M: SparseMatrix) -> list[dict[int, object]]:
    """A basis of the null space, each vector a sparse dict on column indices."""
    require_field(M.ring)
    R, pivots = _rref(M)
    ring = M.ring
    pivset = set(pivots)
    out = []
    for f in range(M.cols):
        if f in pivset:
            continue
        v = {f: ring.one}
        for r, c in enumerate(pivots):
            x = R[r][f]
            if x:
                v[c] = ring.neg(ring(x))
        out.append(v)
    return out


def image_basis(M: SparseMatrix) -> list[dict[int, object]]:
    """A basis of the column space (the pivot columns of ``M``)."""
    require_field(M.ring)
    _, pivots = _rref(M)
    return [M.column(c) for c in pivots]


def cokernel_projection_field(M: SparseMatrix):
    """Coordinates on ``F^rows / image(M)``.

    Returns ``(P, free_rows)``: ``P`` is a SparseMatrix of shape
    ``(rows - rank, rows)`` sending a vector to its class, and the classes of
    the standard vectors ``e_i`` for ``i`` in ``free_rows`` form the basis.
    """
    require_field(M.ring)
    ring = M.ring
    R, pivots = _rref(M.transpose())
    piv_rows = pivots
    free = [i for i in range(M.rows) if i not in set(piv_rows)]
    where = {i: k for k, i in enumerate(free)}
    entries = {}
    for k, i in enumerate(free):
        entries[(k, i)] = ring.one
    for r, c in enumerate(piv_rows):
        row = R[r]
        for i in free:
            x = row[i]
            if x:
                entries[(where[i], c)] = ring.neg(ring(x))
    return SparseMatrix.from_dict(len(free), M.rows, ring, entries), free
