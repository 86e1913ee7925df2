"""Smith normal form over the integers.

Large sparse matrices go through the unit-pivot echelon kernel first: every
column whose lead can be made +-1 contributes an invariant factor 1, and only
the leftover residual block needs a real (dense) Smith reduction.
"""

from __future__ import annotations

from math import gcd

from ..rings import INTEGERS
from . import kernels
from .sparse import MatrixError, SparseMatrix

DENSE_CUTOFF = 64
STRATEGIES = ("min_abs", "first_nonzero")


def _normalize(diag: list[int]) -> list[int]:
    """Turn any diagonal into the divisibility chain with the same cokernel."""
    d = sorted(abs(x) for x in diag if x)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] * d[j] // g
    return d


def _choose_pivot(A, t: int, strategy: str):
    best = None
    best_key = None
    for i in range(t, len(A)):
        row = A[i]
        for j in range(t, len(row)):
            x = row[j]
            if not x:
                continue
            if strategy == "first_nonzero":
                return i, j
            # |value| first, then a crude fill-in estimate
            key = (abs(x), sum(1 for y in row[t:] if y))
            if best_key is None or key < best_key:
                best, best_key = (i, j), key
                if key[0] == 1 and key[1] == 1:
                    return best
    return best


def invariant_factors_dense(rows, strategy: str = "min_abs") -> list[int]:
    """Invariant factors of a dense integer matrix given as a list of rows."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown pivot strategy {strategy!r}")
    A = [[int(x) for x in r] for r in rows]
    A = [r for r in A if any(r)]
    if not A:
        return []
    ncols = len(A[0])
    diag = []
    t = 0
    while t < min(len(A), ncols):
        piv = _choose_pivot(A, t, strategy)
        if piv is None:
            break
        i, j = piv
        A[t], A[i] = A[i], A[t]
        for r in A:
            r[t], r[j] = r[j], r[t]
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, len(A)):
                x = A[i][t]
                if x:
                    q = x // p
                    if q:
                        ri, rt = A[i], A[t]
                        for c in range(t, ncols):
                            if rt[c]:
                                ri[c] -= q * rt[c]
                    if A[i][t]:
                        dirty = True
            rt = A[t]
            for c in range(t + 1, ncols):
                x = rt[c]
                if x:
                    q = x // p
                    if q:
                        for r in A[t:]:
                            if r[t]:
                                r[c] -= q * r[t]
                    if rt[c]:
                        dirty = True
            if not dirty:
                break
            # a smaller remainder exists in row t or column t: move it to the pivot
            best = None
            for i in range(t + 1, len(A)):
                if A[i][t] and (best is None or abs(A[i][t]) < abs(best[2])):
                    best = (i, None, A[i][t])
            for c in range(t + 1, ncols):
                if rt[c] and (best is None or abs(rt[c]) < abs(best[2])):
                    best = (None, c, rt[c])
            i, c, _ = best
            if i is not None:
                A[t], A[i] = A[i], A[t]
            else:
                for r in A:
                    r[t], r[c] = r[c], r[t]
        diag.append(A[t][t])
        t += 1
    return _normalize(diag)


def _compress_rows(residuals: list[dict[int, int]]) -> list[list[int]]:
    rows = sorted({k for v in residuals for k in v})
    where = {k: i for i, k in enumerate(rows)}
    dense = [[0] * len(residuals) for _ in rows]
    for j, v in enumerate(residuals):
        for k, x in v.items():
            dense[where[k]][j] = x
    return dense


def unit_reduce(M: SparseMatrix, stop_at: int = -1, backend: str | None = None):
    """Run the unit-pivot echelon over the columns of an integer matrix.

    Returns ``(units, residual_columns, exhausted)``; ``exhausted`` is False when
    ``stop_at`` ended the scan early. Falls back to Python integers if the
    compiled kernel reports 64-bit overflow.
    """
    if not M.integral:
        if not M.integer_valued:
            raise MatrixError("unit_reduce needs integer entries")
        eng = kernels.python_int_echelon(M.rows)
        used = eng.add_csc(M.indptr, M.indices, M.data, stop_at)
        return eng.rank, eng.finalize(), used == M.cols
    try:
        eng = kernels.int_echelon(M.rows, backend)
        used = eng.add_csc(M.indptr, M.indices, M.data, stop_at)
        residuals = eng.finalize()
    except OverflowError:
        eng = kernels.python_int_echelon(M.rows)
        used = eng.add_csc(M.indptr, M.indices, M.data, stop_at)
        residuals = eng.finalize()
    return eng.rank, residuals, used == M.cols


def smith_normal_form(M: SparseMatrix, strategy: str = "min_abs", upper_bound: int | None = None) -> list[int]:
    """Invariant factors ``d_1 | d_2 | ... | d_r`` of an integer matrix (r = rank).

    ``upper_bound`` is an a priori bound on the rank (for a differential, the
    dimension of the kernel of the next one). Once that many unit pivots are
    found the remaining columns cannot change the answer and are skipped.
    """
    if M.ring.kind != INTEGERS:
        raise MatrixError(f"Smith normal form needs integer matrices, got {M.ring}")
    if M.nnz == 0:
        return []
    if max(M.rows, M.cols) <= DENSE_CUTOFF:
        return invariant_factors_dense(M.to_dense(), strategy)
    stop = -1 if upper_bound is None else upper_bound
    units, residuals, _ = unit_reduce(M, stop)
    if units == upper_bound and residuals:
        raise AssertionError("residual left after reaching the rank bound")
    return [1] * units + (invariant_factors_dense(_compress_rows(residuals), strategy) if residuals else [])


def integer_rank(M: SparseMatrix, upper_bound: int | None = None) -> int:
    """Rank over Q of a matrix with integer entries."""
    from .field import dense_rank_q

    if M.nnz == 0:
        return 0
    stop = -1 if upper_bound is None else upper_bound
    units, residuals, _ = unit_reduce(M, stop)
    if not residuals:
        return units
    return units + dense_rank_q(_compress_rows(residuals))


# -- dense Smith form with transforms (small matrices only) -----------------


def smith_with_transforms(rows: list[list[int]], ncols: int | None = None):
    """Dense Smith form ``U A V = D`` over Z keeping ``U`` and ``U^{-1}``.

    Returns ``(diag, U, Uinv)`` with ``diag`` the raw diagonal (not normalized
    to a divisibility chain, which the cokernel coordinates below don't need).
    """
    A = [[int(x) for x in r] for r in rows]
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if m else 0)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]

    def row_swap(a, b):
        A[a], A[b] = A[b], A[a]
        U[a], U[b] = U[b], U[a]
        for r in Ui:
            r[a], r[b] = r[b], r[a]

    def row_add(dst, src, q):
        # row_dst -= q * row_src
        ra, rs = A[dst], A[src]
        for c in range(n):
            if rs[c]:
                ra[c] -= q * rs[c]
        ua, us = U[dst], U[src]
        for c in range(m):
            if us[c]:
                ua[c] -= q * us[c]
        for r in Ui:
            if r[dst]:
                r[src] += q * r[dst]

    def col_swap(a, b):
        for r in A:
            r[a], r[b] = r[b], r[a]

    def col_add(dst, src, q):
        for r in A:
            if r[src]:
                r[dst] -= q * r[src]

    diag = []
    t = 0
    while t < min(m, n):
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        row_swap(t, piv[0])
        col_swap(t, piv[1])
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    row_add(i, t, A[i][t] // p)
                    dirty |= bool(A[i][t])
            for c in range(t + 1, n):
                if A[t][c]:
                    col_add(c, t, A[t][c] // p)
                    dirty |= bool(A[t][c])
            if not dirty:
                break
            best = None
            for i in range(t + 1, m):
                if A[i][t] and (best is None or abs(A[i][t]) < abs(best[2])):
                    best = (i, None, A[i][t])
            for c in range(t + 1, n):
                if A[t][c] and (best is None or abs(A[t][c]) < abs(best[2])):
                    best = (None, c, A[t][c])
            if best[0] is not None:
                row_swap(t, best[0])
            else:
                col_swap(t, best[1])
        diag.append(A[t][t])
        t += 1
    return diag, U, Ui
