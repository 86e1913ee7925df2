"""Free resolutions of the trivial right module over a prime field.

``Tor^A(t, N)`` is the homology of ``P_* (x)_A N`` for any free resolution
``P_* -> t`` of right modules. Generators of each syzygy module are picked
greedily from a kernel basis, so the resolution is usually far from minimal,
but it is small compared to the bar complex and is computed once per algebra
and reused for every coefficient module.
"""

from __future__ import annotations

import logging
import threading

import numpy as np

from .algebra import BasedAlgebra, BasedModule
from .linalg import ChainComplex, SparseMatrix
from .linalg.field import rref_modp
from .rings import INTEGERS_MOD

log = logging.getLogger(__name__)


class ResolutionError(ValueError):
    pass


def _kernel_rows(R: np.ndarray, pivots: list[int], ncols: int, p: int) -> np.ndarray:
    """Kernel basis (as rows) from a reduced row echelon form."""
    free = [c for c in range(ncols) if c not in set(pivots)]
    K = np.zeros((len(free), ncols), dtype=np.int64)
    r = len(pivots)
    for t, f in enumerate(free):
        K[t, f] = 1
        if r:
            K[t, pivots] = (-R[:r, f]) % p
    return K


def _rank_modp(M: np.ndarray, p: int) -> int:
    M = M[M.any(axis=1)]
    if not len(M):
        return 0
    return len(rref_modp(M, p)[1])


class _Span:
    """Row space over F_p kept in reduced echelon form, grown incrementally."""

    def __init__(self, ncols: int, p: int):
        self.p = p
        self.ncols = ncols
        self.rows = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, V: np.ndarray) -> np.ndarray:
        if not self.pivots or not len(V):
            return V % self.p
        return (V - V[:, self.pivots] @ self.rows) % self.p

    def extend(self, vectors: np.ndarray) -> np.ndarray:
        """Add vectors to the span; returns the new echelon rows (zero on old pivots)."""
        W = self.reduce(vectors)
        W = W[W.any(axis=1)]
        if not len(W):
            return W
        R, piv = rref_modp(W, self.p)
        new = R[: len(piv)]
        if self.pivots:
            # clear the new pivot columns from the old rows
            self.rows = (self.rows - self.rows[:, piv] @ new) % self.p
        self.rows = np.vstack([self.rows, new])
        self.pivots = self.pivots + list(piv)
        return new


class TrivialResolution:
    def __init__(self, A: BasedAlgebra, candidates: int = 8, seed: int = 0):
        if A.ring.kind != INTEGERS_MOD or not A.ring.is_field:
            raise ResolutionError("the resolution engine works over prime fields only")
        self.algebra = A
        self.p = A.ring.modulus
        d = A.dim
        p = self.p
        self._right = []
        for b in range(d):
            Rb = np.zeros((d, d), dtype=np.int64)
            for c in range(d):
                k, coef = A.product(c, b)
                Rb[k, c] = (Rb[k, c] + coef) % p
            self._right.append(Rb)
        aug = np.array([[A.augmentation(i) for i in range(d)]], dtype=np.int64)
        self.maps = [aug]  # maps[k]: P_k -> P_{k-1} (maps[0] is the augmentation)
        self.gens = [1]
        self.generator_vectors: list[np.ndarray] = []
        self.candidates = candidates
        self._rng = np.random.default_rng(seed)
        self._lock = threading.Lock()

    def _right_multiples(self, v: np.ndarray, g: int) -> np.ndarray:
        V = v.reshape(g, self.algebra.dim)
        return np.stack([((V @ Rb.T) % self.p).reshape(-1) for Rb in self._right])

    def _pick(self, residual: np.ndarray, span: "_Span", k: int) -> np.ndarray:
        """Among a few random combinations of the residual kernel vectors, the
        one whose right multiples add the most to the span."""
        p = self.p
        best, gain = None, -1
        for _ in range(self.candidates):
            c = self._rng.integers(0, p, size=len(residual))
            v = (c @ residual) % p
            if not v.any():
                continue
            M = span.reduce(self._right_multiples(v, self.gens[k]))
            g = _rank_modp(M, p)
            if g > gain:
                best, gain = v, g
        return residual[0].copy() if best is None else best

    def extend_to(self, length: int) -> None:
        """Compute P_0..P_length (so that H_k of the tensored complex is valid for k < length)."""
        with self._lock:
            self._extend_to(length)

    def _extend_to(self, length: int) -> None:
        d = self.algebra.dim
        p = self.p
        while len(self.gens) <= length:
            k = len(self.gens) - 1
            dk = self.maps[-1]
            ncols = self.gens[k] * d
            R, piv = rref_modp(dk, p)
            K = _kernel_rows(R, piv, ncols, p)
            target = K.shape[0]
            span = _Span(ncols, p)
            chosen = []
            residual = K
            while span.dim < target:
                residual = residual[residual.any(axis=1)]
                if not len(residual):
                    raise ResolutionError("generated submodule fell short of the kernel")
                v = self._pick(residual, span, k)
                chosen.append(v)
                new = span.extend(self._right_multiples(v, self.gens[k]))
                if len(new):
                    residual = (residual - residual[:, span.pivots[len(span.pivots) - len(new):]] @ new) % p
            if span.dim != target:
                raise ResolutionError("generated submodule overshot the kernel")
            log.debug("resolution degree %d: %d generators", k + 1, len(chosen))
            g = len(chosen)
            cols = [] if not g else [self._right_multiples(v, self.gens[k]) for v in chosen]
            if g:
                new = np.concatenate(cols, axis=0).T % p  # (gens_k * d) x (g * d)
            else:
                new = np.zeros((ncols, 0), dtype=np.int64)
            self.generator_vectors.append(np.array(chosen, dtype=np.int64).reshape(g, ncols))
            self.maps.append(new)
            self.gens.append(g)

    def tensor_complex(self, N: BasedModule, top: int) -> ChainComplex:
        """``P_* (x)_A N`` in degrees ``0..top``."""
        if N.algebra is not self.algebra:
            raise ResolutionError("module is over a different algebra")
        self.extend_to(top)
        A = self.algebra
        p = self.p
        d, r = A.dim, N.rank
        rho = np.zeros((d, r, r), dtype=np.int64)
        for c in range(d):
            for (i, j), x in N.action_matrix(c).entries.items():
                rho[c, i, j] = x
        diffs = {}
        for k in range(1, top + 1):
            gk, gprev = self.gens[k], self.gens[k - 1]
            V = self.generator_vectors[k - 1].reshape(gk, gprev, d)
            # block (h, j) = sum_c V[j, h, c] rho[c]
            blocks = np.tensordot(V, rho, axes=([2], [0])) % p  # (gk, gprev, r, r)
            M = blocks.transpose(1, 2, 0, 3).reshape(gprev * r, gk * r)
            rows, cols = np.nonzero(M)
            diffs[k] = SparseMatrix.from_triplets(gprev * r, gk * r, A.ring, rows, cols, M[rows, cols])
        dims = {k: self.gens[k] * r for k in range(top + 1)}
        return ChainComplex(A.ring, dims, diffs, bounded=False)


_RESOLUTIONS: dict = {}
_RESOLUTIONS_LOCK = threading.Lock()


def trivial_resolution(A: BasedAlgebra) -> TrivialResolution:
    key = id(A)
    with _RESOLUTIONS_LOCK:
        res = _RESOLUTIONS.get(key)
        if res is None or res.algebra is not A:
            res = TrivialResolution(A)
            _RESOLUTIONS[key] = res
    return res
