# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled incremental column echelon engines (see ``_echelon_py`` for the contract)."""

from libcpp.vector cimport vector
from libcpp.queue cimport priority_queue
from libcpp.algorithm cimport sort as cpp_sort
from libcpp.algorithm cimport unique as cpp_unique

cdef extern from *:
    """
    static inline int dh_mul_ovf(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    static inline int dh_sub_ovf(long long a, long long b, long long *r) { return __builtin_sub_overflow(a, b, r); }
    """
    bint dh_mul_ovf(long long a, long long b, long long *r) nogil
    bint dh_sub_ovf(long long a, long long b, long long *r) nogil


cdef long long _inv_mod(long long a, long long p):
    cdef long long t = 0, newt = 1, r = p, newr = a % p, q, tmp
    if newr < 0:
        newr += p
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef class ModpEchelon:
    cdef public int nrows
    cdef public long long p
    cdef public long long rank
    cdef vector[vector[int]] piv_idx
    cdef vector[vector[long long]] piv_val
    cdef vector[long long] acc
    cdef vector[int] stash

    def __init__(self, int nrows, long long p):
        if p < 2 or p >= (1LL << 31):
            raise ValueError("modulus must be a prime below 2**31")
        self.nrows = nrows
        self.p = p
        self.rank = 0
        self.piv_idx.resize(nrows)
        self.piv_val.resize(nrows)
        self.acc.assign(nrows, 0)

    cdef bint _add(self, const int[:] idx, const long long[:] val, Py_ssize_t lo, Py_ssize_t hi) except -1:
        cdef priority_queue[int] heap
        cdef Py_ssize_t t
        cdef int k, r
        cdef long long a, x, old, new, p = self.p, inv
        cdef size_t u, m
        for t in range(lo, hi):
            k = idx[t]
            if k < 0 or k >= self.nrows:
                raise IndexError("row index out of range")
            x = val[t] % p
            if x < 0:
                x += p
            if x == 0:
                continue
            old = self.acc[k]
            self.acc[k] = (old + x) % p
            if old == 0:
                heap.push(-k)
        while not heap.empty():
            k = -heap.top()
            heap.pop()
            a = self.acc[k]
            if a == 0:
                continue
            m = self.piv_idx[k].size()
            if m == 0:
                self.stash.clear()
                self.stash.push_back(k)
                while not heap.empty():
                    r = -heap.top()
                    heap.pop()
                    if self.acc[r] != 0 and self.stash.back() != r:
                        self.stash.push_back(r)
                inv = _inv_mod(a, p)
                for u in range(self.stash.size()):
                    r = self.stash[u]
                    self.piv_idx[k].push_back(r)
                    self.piv_val[k].push_back(self.acc[r] * inv % p)
                    self.acc[r] = 0
                self.rank += 1
                return True
            for u in range(m):
                r = self.piv_idx[k][u]
                old = self.acc[r]
                new = (old - a * self.piv_val[k][u]) % p
                if new < 0:
                    new += p
                self.acc[r] = new
                if old == 0 and new != 0:
                    heap.push(-r)
        return False

    def add_column(self, column):
        import numpy as np
        keys = np.fromiter(column.keys(), dtype=np.int32, count=len(column))
        vals = np.fromiter(column.values(), dtype=np.int64, count=len(column))
        return self._add(keys, vals, 0, len(keys))

    def add_csc(self, indptr, indices, data, long long stop_at=-1):
        import numpy as np
        cdef const long long[:] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
        cdef const int[:] idx = np.ascontiguousarray(indices, dtype=np.int32)
        cdef const long long[:] val = np.ascontiguousarray(np.asarray(data) % self.p, dtype=np.int64)
        cdef Py_ssize_t j, ncols = ptr.shape[0] - 1
        for j in range(ncols):
            if 0 <= stop_at <= self.rank:
                return j
            self._add(idx, val, ptr[j], ptr[j + 1])
        return ncols

    def pivot_rows(self):
        return [k for k in range(self.nrows) if self.piv_idx[k].size() > 0]


cdef class IntEchelon:
    cdef public int nrows
    cdef public long long rank
    cdef vector[vector[int]] piv_idx
    cdef vector[vector[long long]] piv_val
    cdef vector[long long] acc
    cdef vector[char] has_pivot
    cdef vector[int] stash
    cdef list residuals

    def __init__(self, int nrows):
        self.nrows = nrows
        self.rank = 0
        self.piv_idx.resize(nrows)
        self.piv_val.resize(nrows)
        self.acc.assign(nrows, 0)
        self.has_pivot.assign(nrows, 0)
        self.residuals = []

    cdef void _clear(self, priority_queue[int]& heap):
        cdef int r
        while not heap.empty():
            r = -heap.top()
            heap.pop()
            self.acc[r] = 0

    cdef object _reduce(self, const int[:] idx, const long long[:] val, Py_ssize_t lo, Py_ssize_t hi, bint allow_pivot):
        # returns True (pivoted), or a dict of kept entries (possibly empty)
        cdef priority_queue[int] heap
        cdef Py_ssize_t t
        cdef int k, r
        cdef long long a, x, old, new, prod
        cdef size_t u, m
        cdef dict kept = {}
        for t in range(lo, hi):
            k = idx[t]
            if k < 0 or k >= self.nrows:
                self._clear(heap)
                raise IndexError("row index out of range")
            x = val[t]
            if x == 0:
                continue
            old = self.acc[k]
            if dh_sub_ovf(old, -x, &new):
                self._clear(heap)
                raise OverflowError("integer elimination overflowed 64 bits")
            self.acc[k] = new
            if old == 0:
                heap.push(-k)
        while not heap.empty():
            k = -heap.top()
            heap.pop()
            a = self.acc[k]
            if a == 0 or k in kept:
                continue
            if not self.has_pivot[k]:
                if allow_pivot and not kept and (a == 1 or a == -1):
                    self.stash.clear()
                    self.stash.push_back(k)
                    while not heap.empty():
                        r = -heap.top()
                        heap.pop()
                        if self.acc[r] != 0 and self.stash.back() != r:
                            self.stash.push_back(r)
                    for u in range(self.stash.size()):
                        r = self.stash[u]
                        self.piv_idx[k].push_back(r)
                        self.piv_val[k].push_back(self.acc[r] * a)
                        self.acc[r] = 0
                    self.has_pivot[k] = 1
                    self.rank += 1
                    return True
                kept[k] = a
                continue
            m = self.piv_idx[k].size()
            for u in range(m):
                r = self.piv_idx[k][u]
                old = self.acc[r]
                if dh_mul_ovf(a, self.piv_val[k][u], &prod) or dh_sub_ovf(old, prod, &new):
                    self._clear(heap)
                    for r in kept:
                        self.acc[r] = 0
                    self.acc[k] = 0
                    raise OverflowError("integer elimination overflowed 64 bits")
                self.acc[r] = new
                if old == 0 and new != 0:
                    heap.push(-r)
        for r in kept:
            self.acc[r] = 0
        return kept

    def add_column(self, column):
        import numpy as np
        keys = np.fromiter(column.keys(), dtype=np.int32, count=len(column))
        vals = np.fromiter(column.values(), dtype=np.int64, count=len(column))
        out = self._reduce(keys, vals, 0, len(keys), True)
        if out is True:
            return True
        if out:
            self.residuals.append(out)
        return False

    def add_csc(self, indptr, indices, data, long long stop_at=-1):
        import numpy as np
        cdef const long long[:] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
        cdef const int[:] idx = np.ascontiguousarray(indices, dtype=np.int32)
        cdef const long long[:] val = np.ascontiguousarray(data, dtype=np.int64)
        cdef Py_ssize_t j, ncols = ptr.shape[0] - 1
        for j in range(ncols):
            if 0 <= stop_at <= self.rank:
                return j
            out = self._reduce(idx, val, ptr[j], ptr[j + 1], True)
            if out is not True and out:
                self.residuals.append(out)
        return ncols

    def finalize(self):
        import numpy as np
        changed = True
        while changed:
            changed = False
            pending, self.residuals = self.residuals, []
            for v in pending:
                keys = np.fromiter(v.keys(), dtype=np.int32, count=len(v))
                vals = np.fromiter(v.values(), dtype=np.int64, count=len(v))
                out = self._reduce(keys, vals, 0, len(keys), True)
                if out is True:
                    changed = True
                elif out:
                    self.residuals.append(out)
        return [dict(v) for v in self.residuals]

    def pivot_rows(self):
        return [k for k in range(self.nrows) if self.has_pivot[k]]
