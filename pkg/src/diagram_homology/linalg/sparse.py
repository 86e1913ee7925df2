"""Sparse matrices over an exact ring, stored column-compressed.

Entries live in an ``int64`` array while every entry is an integer of
absolute value below 2^62 (entries mod m are stored as canonical residues).
Otherwise an object array holds Python integers (over Z) or
:class:`fractions.Fraction` values (over Q), so nothing ever overflows.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

import numpy as np
from scipy import sparse as sp

from ..rings import RATIONALS, Ring, parse_ring

_INT64_SAFE = 1 << 62


class MatrixError(ValueError):
    pass


class SparseMatrix:
    __slots__ = ("rows", "cols", "ring", "indptr", "indices", "data")

    def __init__(self, rows: int, cols: int, ring: Ring, indptr, indices, data):
        self.rows = int(rows)
        self.cols = int(cols)
        self.ring = ring
        self.indptr = indptr
        self.indices = indices
        self.data = data

    # -- construction ------------------------------------------------------

    @classmethod
    def zero(cls, rows: int, cols: int, ring: Ring) -> "SparseMatrix":
        return cls(rows, cols, ring, np.zeros(cols + 1, np.int64), np.zeros(0, np.int32), np.zeros(0, np.int64))

    @classmethod
    def from_triplets(cls, rows: int, cols: int, ring: Ring, r, c, v) -> "SparseMatrix":
        """Build from coordinate arrays; duplicates are summed and zeros dropped."""
        r = np.asarray(r, dtype=np.int64)
        c = np.asarray(c, dtype=np.int64)
        if len(r) and (r.min() < 0 or r.max() >= rows or c.min() < 0 or c.max() >= cols):
            raise MatrixError("index out of range")
        if ring.kind == RATIONALS and not np.issubdtype(np.asarray(v).dtype, np.integer):
            acc: dict[tuple[int, int], Fraction] = defaultdict(Fraction)
            for i, j, x in zip(r.tolist(), c.tolist(), v):
                acc[(j, i)] += Fraction(x)
            return cls._from_column_dict(rows, cols, ring, acc)
        v = np.asarray(v)
        if v.dtype == object:
            if len(v) and max(abs(int(x)) for x in v) >= _INT64_SAFE:
                acc = defaultdict(int)
                for i, j, x in zip(r.tolist(), c.tolist(), v):
                    acc[(j, i)] += int(x)
                return cls._from_column_dict(rows, cols, ring, acc)
            v = v.astype(np.int64)
        v = v.astype(np.int64, copy=False)
        m = sp.coo_matrix((v, (r, c)), shape=(rows, cols), dtype=np.int64).tocsc()
        m.sum_duplicates()
        if ring.modulus:
            m.data = m.data % ring.modulus
        m.eliminate_zeros()
        m.sort_indices()
        return cls(rows, cols, ring, m.indptr.astype(np.int64), m.indices.astype(np.int32), m.data.astype(np.int64))

    @classmethod
    def _from_column_dict(cls, rows, cols, ring, acc: Mapping[tuple[int, int], object]) -> "SparseMatrix":
        items = sorted((k, x) for k, x in acc.items() if not ring.is_zero(x))
        if any(not (0 <= j < cols and 0 <= i < rows) for (j, i), _x in items):
            raise MatrixError("index out of range")
        indptr = np.zeros(cols + 1, np.int64)
        for (j, _), _x in items:
            indptr[j + 1] += 1
        np.cumsum(indptr, out=indptr)
        indices = np.array([i for (_, i), _x in items], dtype=np.int32)
        values = [ring(x) for _, x in items]
        integral = all(x.denominator == 1 and abs(x) < _INT64_SAFE for x in values)
        data = np.empty(len(items), dtype=np.int64 if integral else object)
        for t, x in enumerate(values):
            data[t] = int(x) if integral else x
        return cls(rows, cols, ring, indptr, indices, data)

    @classmethod
    def from_dict(cls, rows: int, cols: int, ring: Ring, entries: Mapping[tuple[int, int], object]) -> "SparseMatrix":
        return cls._from_column_dict(rows, cols, ring, {(j, i): ring(x) for (i, j), x in entries.items()})

    @classmethod
    def from_dense(cls, dense, ring: Ring) -> "SparseMatrix":
        dense = [list(row) for row in dense]
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        return cls.from_dict(rows, cols, ring, {(i, j): x for i, row in enumerate(dense) for j, x in enumerate(row) if x})

    @classmethod
    def from_columns(cls, rows: int, ring: Ring, columns: Iterable[Mapping[int, object]]) -> "SparseMatrix":
        acc = {}
        cols = 0
        for j, col in enumerate(columns):
            cols = j + 1
            for i, x in col.items():
                acc[(j, i)] = ring(x)
        return cls._from_column_dict(rows, cols, ring, acc)

    @classmethod
    def identity(cls, n: int, ring: Ring) -> "SparseMatrix":
        return cls.from_dict(n, n, ring, {(i, i): 1 for i in range(n)})

    # -- access ------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return len(self.data)

    @property
    def entries(self) -> dict[tuple[int, int], object]:
        out = {}
        for j in range(self.cols):
            for t in range(self.indptr[j], self.indptr[j + 1]):
                out[(int(self.indices[t]), j)] = self._value(t)
        return out

    @property
    def integer_valued(self) -> bool:
        """Every entry is an integer, whatever the storage."""
        return self.integral or all(Fraction(x).denominator == 1 for x in self.data)

    @property
    def integral(self) -> bool:
        """True when entries are held as machine integers (see the module docstring)."""
        return self.data.dtype != object

    def _value(self, t):
        x = self.data[t]
        if self.ring.kind == RATIONALS:
            return Fraction(int(x)) if self.integral else x
        return int(x)

    def column(self, j: int) -> dict[int, object]:
        lo, hi = self.indptr[j], self.indptr[j + 1]
        return {int(self.indices[t]): self._value(t) for t in range(lo, hi)}

    def columns(self) -> Iterator[dict[int, object]]:
        for j in range(self.cols):
            yield self.column(j)

    def to_dense(self) -> list[list]:
        out = [[self.ring.zero] * self.cols for _ in range(self.rows)]
        for (i, j), x in self.entries.items():
            out[i][j] = x
        return out

    def is_zero(self) -> bool:
        return self.nnz == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.ring == other.ring and self.entries == other.entries

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols} over {self.ring}, nnz={self.nnz})"

    # -- algebra -----------------------------------------------------------

    def _scipy(self):
        return sp.csc_matrix((self.data, self.indices, self.indptr), shape=self.shape, dtype=np.int64)

    def transpose(self) -> "SparseMatrix":
        if not self.integral:
            return SparseMatrix.from_dict(self.cols, self.rows, self.ring, {(j, i): x for (i, j), x in self.entries.items()})
        t = self._scipy().T.tocsc()
        t.sort_indices()
        return SparseMatrix(self.cols, self.rows, self.ring, t.indptr.astype(np.int64), t.indices.astype(np.int32), t.data.astype(np.int64))

    def max_abs(self) -> int:
        if self.nnz == 0:
            return 0
        if not self.integral:
            return max(abs(x.numerator) for x in self.data)
        return int(np.abs(self.data).max())

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise MatrixError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.ring != other.ring:
            raise MatrixError("ring mismatch")
        R = self.ring
        if self.integral and other.integral:
            bound = self.max_abs() * other.max_abs() * max(1, self.cols)
            if bound < _INT64_SAFE:
                prod = (self._scipy() @ other._scipy()).tocoo()
                return SparseMatrix.from_triplets(self.rows, other.cols, R, prod.row, prod.col, prod.data)
        rows_of = defaultdict(list)
        for (i, k), x in self.entries.items():
            rows_of[k].append((i, x))
        acc: dict[tuple[int, int], object] = defaultdict(lambda: R.zero)
        for (k, j), y in other.entries.items():
            for i, x in rows_of.get(k, ()):
                acc[(i, j)] = R.add(acc[(i, j)], R.mul(x, y))
        return SparseMatrix.from_dict(self.rows, other.cols, R, acc)

    def scale_columns_to_integers(self) -> "SparseMatrix":
        """Over Q, multiply each column by the lcm of its denominators (rank-preserving)."""
        from math import lcm

        from ..rings import ZZ

        if self.ring.kind != RATIONALS:
            return self
        if self.integral:
            return SparseMatrix(self.rows, self.cols, ZZ, self.indptr, self.indices, self.data)
        scaled = {}
        for j in range(self.cols):
            lo, hi = self.indptr[j], self.indptr[j + 1]
            den = 1
            for t in range(lo, hi):
                den = lcm(den, self.data[t].denominator)
            for t in range(lo, hi):
                scaled[(j, int(self.indices[t]))] = int(self.data[t] * den)
        return SparseMatrix._from_column_dict(self.rows, self.cols, ZZ, scaled)

    # -- dump format ---------------------------------------------------------

    def dump(self) -> str:
        lines = [f"{self.rows} {self.cols} {self.ring}"]
        for j in range(self.cols):
            for t in range(self.indptr[j], self.indptr[j + 1]):
                lines.append(f"{int(self.indices[t])} {j} {self._value(t)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, text: str) -> "SparseMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        rows, cols, ring_spec = lines[0].split()
        ring = parse_ring(ring_spec)
        entries = {}
        for ln in lines[1:]:
            i, j, x = ln.split()
            entries[(int(i), int(j))] = ring(Fraction(x))
        return cls.from_dict(int(rows), int(cols), ring, entries)
