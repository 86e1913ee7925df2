"""Pure-Python incremental column echelon engines.

Columns are fed one at a time and reduced against stored pivot columns. A
pivot column is keyed by its lead, the smallest row index where it is
nonzero, and is scaled so that the lead entry is 1. Reducing a column only
ever removes its current lead, so pivot leads stay distinct and the stored
pivots are linearly independent.

These classes are the fallback for the compiled ``_echelon`` extension and
share its interface exactly.
"""

from __future__ import annotations

import heapq


def _csc_columns(indptr, indices, data):
    for j in range(len(indptr) - 1):
        lo, hi = int(indptr[j]), int(indptr[j + 1])
        yield {int(indices[t]): int(data[t]) for t in range(lo, hi)}


class ModpEchelon:
    """Rank accumulator over the prime field F_p."""

    def __init__(self, nrows: int, p: int):
        self.nrows = nrows
        self.p = p
        self.rank = 0
        self._pivots: dict[int, dict[int, int]] = {}

    def add_column(self, column: dict[int, int]) -> bool:
        p = self.p
        v = {}
        for k, x in column.items():
            x %= p
            if x:
                v[k] = (v.get(k, 0) + x) % p
        heap = list(v)
        heapq.heapify(heap)
        pivots = self._pivots
        while heap:
            k = heapq.heappop(heap)
            a = v.get(k, 0)
            if not a:
                continue
            piv = pivots.get(k)
            if piv is None:
                inv = pow(a, -1, p)
                pivots[k] = {r: x * inv % p for r, x in v.items() if x}
                self.rank += 1
                return True
            for r, x in piv.items():
                old = v.get(r, 0)
                new = (old - a * x) % p
                if new:
                    v[r] = new
                    if not old:
                        heapq.heappush(heap, r)
                elif old:
                    del v[r]
        return False

    def add_csc(self, indptr, indices, data, stop_at: int = -1) -> int:
        """Feed CSC columns; returns how many were consumed before ``stop_at`` was hit."""
        used = 0
        for col in _csc_columns(indptr, indices, data):
            if 0 <= stop_at <= self.rank:
                break
            self.add_column(col)
            used += 1
        return used

    def pivot_rows(self) -> list[int]:
        return sorted(self._pivots)


class IntEchelon:
    """Elimination over the integers restricted to unit (+-1) pivots.

    Columns whose lead cannot be pivoted on are kept as residuals, fully
    reduced against the pivots. After :meth:`finalize` the Smith invariants of
    everything fed equal ``rank`` ones followed by the invariants of the
    residual block.
    """

    def __init__(self, nrows: int):
        self.nrows = nrows
        self.rank = 0
        self._pivots: dict[int, dict[int, int]] = {}
        self._residuals: list[dict[int, int]] = []

    def _reduce(self, v: dict[int, int], allow_pivot: bool) -> tuple[dict[int, int], bool]:
        heap = list(v)
        heapq.heapify(heap)
        pivots = self._pivots
        kept: dict[int, int] = {}
        while heap:
            k = heapq.heappop(heap)
            a = v.get(k, 0)
            if not a or k in kept:
                continue
            piv = pivots.get(k)
            if piv is None:
                if allow_pivot and not kept and (a == 1 or a == -1):
                    pivots[k] = {r: x * a for r, x in v.items() if x}
                    self.rank += 1
                    return {}, True
                kept[k] = a
                continue
            for r, x in piv.items():
                old = v.get(r, 0)
                new = old - a * x
                if new:
                    v[r] = new
                    if not old:
                        heapq.heappush(heap, r)
                elif old:
                    del v[r]
        return kept, False

    def add_column(self, column: dict[int, int]) -> bool:
        v = {k: x for k, x in column.items() if x}
        rest, pivoted = self._reduce(v, True)
        if rest:
            self._residuals.append(rest)
        return pivoted

    def add_csc(self, indptr, indices, data, stop_at: int = -1) -> int:
        used = 0
        for col in _csc_columns(indptr, indices, data):
            if 0 <= stop_at <= self.rank:
                break
            self.add_column(col)
            used += 1
        return used

    def finalize(self) -> list[dict[int, int]]:
        """Re-reduce residuals against all pivots, promoting unit leads, until stable."""
        changed = True
        while changed:
            changed = False
            pending, self._residuals = self._residuals, []
            for v in pending:
                rest, pivoted = self._reduce(dict(v), True)
                if pivoted:
                    changed = True
                elif rest:
                    self._residuals.append(rest)
        return [dict(v) for v in self._residuals]

    def pivot_rows(self) -> list[int]:
        return sorted(self._pivots)


class FieldEchelon:
    """Generic rank accumulator over any exact field given as a :class:`~diagram_homology.rings.Ring`."""

    def __init__(self, nrows: int, ring):
        self.nrows = nrows
        self.ring = ring
        self.rank = 0
        self._pivots: dict[int, dict] = {}

    def add_column(self, column: dict) -> bool:
        R = self.ring
        v = {k: R(x) for k, x in column.items() if not R.is_zero(x)}
        heap = list(v)
        heapq.heapify(heap)
        while heap:
            k = heapq.heappop(heap)
            a = v.get(k)
            if a is None or R.is_zero(a):
                continue
            piv = self._pivots.get(k)
            if piv is None:
                inv = R.inverse(a)
                self._pivots[k] = {r: R.mul(x, inv) for r, x in v.items() if not R.is_zero(x)}
                self.rank += 1
                return True
            for r, x in piv.items():
                old = v.get(r)
                new = R.sub(old, R.mul(a, x)) if old is not None else R.neg(R.mul(a, x))
                if not R.is_zero(new):
                    v[r] = new
                    if old is None:
                        heapq.heappush(heap, r)
                elif old is not None:
                    del v[r]
        return False

    def add_columns(self, columns, stop_at: int = -1) -> int:
        used = 0
        for col in columns:
            if 0 <= stop_at <= self.rank:
                break
            self.add_column(col)
            used += 1
        return used
