"""Normalized bar complexes ``t (x) Abar^{(x)k} (x) N`` computing ``Tor^A(t, N)``.

``Abar`` has one basis vector per non-identity diagram ``g``, standing for
``g - aug(g) 1``. With the left slot specialised to ``t`` the first face
vanishes, so

    d(a_1|...|a_k|x) = sum_{i<k} (-1)^i (a_1|...|a_i a_{i+1}|...|x) + (-1)^k (a_1|...|a_k x)

where products are computed on the lifts and the identity coordinate is
dropped. Degree-k basis tuples are ordered lexicographically, so each
differential is a signed sum of Kronecker products ``1 (x) Mul (x) 1`` and
``1 (x) Act``.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np
from scipy import sparse as sp

from .algebra import BasedAlgebra, BasedModule
from .linalg import ChainComplex, SparseMatrix
from .rings import RATIONALS


class BarError(ValueError):
    pass


def _as_int(x):
    return x.numerator if isinstance(x, Fraction) else int(x)


def bar_tables(A: BasedAlgebra, N: BasedModule):
    """``(Mul, Act, scale)`` as int64 scipy matrices.

    ``Mul`` is ``D x D^2`` (product of complement vectors), ``Act`` is
    ``r x D r``. Over Q both are multiplied by the common denominator ``scale``.
    """
    if N.algebra is not A:
        raise BarError("the coefficient module is not over this algebra")
    R = A.ring
    comp = A.complement()
    pos = {g: t for t, g in enumerate(comp)}
    D = len(comp)
    r = N.rank
    aug = [A.augmentation(g) for g in comp]
    mul: dict[tuple[int, int], object] = {}
    for a, g in enumerate(comp):
        for b, h in enumerate(comp):
            col = a * D + b
            k, c = A.product(g, h)
            terms = [(k, c)]
            if aug[b]:
                terms.append((g, -1))
            if aug[a]:
                terms.append((h, -1))
            for idx, v in terms:
                t = pos.get(idx)
                if t is None:
                    continue
                key = (t, col)
                mul[key] = R.add(mul.get(key, R.zero), R(v))
    act: dict[tuple[int, int], object] = {}
    for a, g in enumerate(comp):
        for x in range(r):
            col = a * r + x
            for y, v in N.act(g, x).items():
                act[(y, col)] = R.add(act.get((y, col), R.zero), v)
            if aug[a]:
                act[(x, col)] = R.sub(act.get((x, col), R.zero), R.one)
    scale = 1
    if R.kind == RATIONALS:
        for v in list(mul.values()) + list(act.values()):
            scale = lcm(scale, Fraction(v).denominator)

    def to_scipy(d, shape):
        items = [(i, j, v) for (i, j), v in d.items() if not R.is_zero(v)]
        if not items:
            return sp.csr_matrix(shape, dtype=np.int64)
        i, j, v = zip(*items)
        vals = np.array([_as_int(Fraction(x) * scale) if R.kind == RATIONALS else int(x) for x in v], dtype=np.int64)
        return sp.csr_matrix((vals, (np.array(i), np.array(j))), shape=shape, dtype=np.int64)

    return to_scipy(mul, (D, D * D)), to_scipy(act, (r, D * r)), scale


def _eye(k: int):
    return sp.identity(k, dtype=np.int64, format="csr")


class BarComplex:
    """Lazily built normalized bar complex truncated at degree ``top``."""

    def __init__(self, A: BasedAlgebra, N: BasedModule, top: int, check: bool = True):
        if top < 1:
            raise BarError("top degree must be at least 1")
        self.algebra = A
        self.module = N
        self.top = top
        self.Mul, self.Act, self.scale = bar_tables(A, N)
        self.D = A.dim - 1
        self.r = N.rank
        self._diffs: dict[int, SparseMatrix] = {}
        self.check = check

    def rank_in_degree(self, k: int) -> int:
        return self.D**k * self.r

    def differential_scipy(self, k: int):
        D, r = self.D, self.r
        total = None
        for i in range(1, k):
            term = sp.kron(sp.kron(_eye(D ** (i - 1)), self.Mul, format="csr"), _eye(D ** (k - 1 - i) * r), format="csr")
            term = term if i % 2 == 0 else -term
            total = term if total is None else total + term
        last = sp.kron(_eye(D ** (k - 1)), self.Act, format="csr")
        last = last if k % 2 == 0 else -last
        total = last if total is None else total + last
        return total.tocoo()

    def differential(self, k: int) -> SparseMatrix:
        if not 1 <= k <= self.top:
            raise BarError(f"differential d_{k} outside 1..{self.top}")
        M = self._diffs.get(k)
        if M is None:
            coo = self.differential_scipy(k)
            M = SparseMatrix.from_triplets(self.rank_in_degree(k - 1), self.rank_in_degree(k), self.algebra.ring, coo.row, coo.col, coo.data)
            self._diffs[k] = M
        return M

    def chain_complex(self) -> ChainComplex:
        dims = {k: self.rank_in_degree(k) for k in range(self.top + 1)}
        diffs = {k: self.differential(k) for k in range(1, self.top + 1)}
        return ChainComplex(self.algebra.ring, dims, diffs, bounded=False, check=self.check)


def bar_complex(A: BasedAlgebra, N: BasedModule, K: int, check: bool = True) -> ChainComplex:
    """The normalized bar complex in degrees ``0..K``; homology is valid in degrees ``0..K-1``."""
    return BarComplex(A, N, K, check=check).chain_complex()
