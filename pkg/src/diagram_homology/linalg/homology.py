"""Chain complexes of free modules and their homology."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..rings import INTEGERS, Ring
from . import field as fl
from .snf import integer_rank, smith_normal_form, smith_with_transforms
from .sparse import MatrixError, SparseMatrix


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class HomologyGroup:
    """``R^free`` plus cyclic torsion ``Z/d`` for each listed factor (integers only)."""

    ring: Ring
    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        t = tuple(int(d) for d in self.torsion)
        if any(d <= 1 for d in t):
            raise ComplexError("torsion factors must exceed 1")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ComplexError("torsion factors must form a divisibility chain")
        if t and self.ring.kind != INTEGERS:
            raise ComplexError("torsion only makes sense over the integers")
        object.__setattr__(self, "torsion", t)

    @property
    def dimension(self) -> int:
        return self.free_rank

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        base = "Z" if self.ring.kind == INTEGERS else ("Q" if self.ring.kind == "Q" else f"F{self.ring.modulus}")
        parts = []
        if self.free_rank:
            parts.append(base if self.free_rank == 1 else f"{base}^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts)

    def as_record(self):
        return {"rank": self.free_rank, "torsion": list(self.torsion)}


def _check_homology_ring(ring: Ring) -> None:
    if ring.kind != INTEGERS and not ring.is_field:
        raise ComplexError(f"homology is only computed over Z or a field, not {ring}")


def cokernel_group(M: SparseMatrix, upper_bound: int | None = None) -> HomologyGroup:
    """The module ``R^rows / image(M)``."""
    _check_homology_ring(M.ring)
    if M.ring.kind == INTEGERS:
        inv = smith_normal_form(M, upper_bound=upper_bound)
        return HomologyGroup(M.ring, M.rows - len(inv), tuple(d for d in inv if d > 1))
    return HomologyGroup(M.ring, M.rows - fl.rank(M, upper_bound))


def matrix_rank(M: SparseMatrix, upper_bound: int | None = None) -> int:
    if M.ring.kind == INTEGERS:
        return integer_rank(M, upper_bound)
    return fl.rank(M, upper_bound)


@dataclass
class ChainComplex:
    """Free modules ``C_k`` (given by rank) for ``lo <= k <= hi`` and ``d_k: C_k -> C_{k-1}``.

    ``bounded`` says whether the modules outside ``[lo, hi]`` are zero. A
    truncated complex (such as a bar complex cut at some degree) is not
    bounded and has no homology at ``hi``.
    """

    ring: Ring
    dims: dict
    differentials: dict
    bounded: bool = True
    check: bool = True
    _ranks: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.dims:
            raise ComplexError("empty complex")
        self.dims = {int(k): int(v) for k, v in self.dims.items()}
        degs = sorted(self.dims)
        if degs != list(range(degs[0], degs[-1] + 1)):
            raise ComplexError("degrees must be contiguous")
        for k, d in self.differentials.items():
            if k - 1 not in self.dims or k not in self.dims:
                raise ComplexError(f"d_{k} has no source or target")
            if d.shape != (self.dims[k - 1], self.dims[k]):
                raise ComplexError(f"d_{k} has shape {d.shape}, expected {(self.dims[k - 1], self.dims[k])}")
            if d.ring != self.ring:
                raise ComplexError(f"d_{k} is over {d.ring}, complex is over {self.ring}")
        if self.check:
            bad = self.square_failures()
            if bad:
                raise ComplexError(f"d o d != 0 in degrees {bad}")

    @property
    def lo(self) -> int:
        return min(self.dims)

    @property
    def hi(self) -> int:
        return max(self.dims)

    def d(self, k: int) -> SparseMatrix:
        if k in self.differentials:
            return self.differentials[k]
        src = self.dims.get(k, 0)
        tgt = self.dims.get(k - 1, 0)
        if src and tgt:
            raise ComplexError(f"d_{k} missing")
        return SparseMatrix.zero(tgt, src, self.ring)

    def square_failures(self) -> list[int]:
        bad = []
        for k in sorted(self.differentials):
            if k - 1 in self.differentials:
                if not (self.differentials[k - 1] @ self.differentials[k]).is_zero():
                    bad.append(k)
        return bad

    def rank_of(self, k: int) -> int:
        """Rank of ``d_k`` over the fraction field (cached)."""
        if k not in self._ranks:
            D = self.d(k)
            self._ranks[k] = matrix_rank(D) if D.nnz else 0
        return self._ranks[k]

    def has_homology_at(self, k: int) -> bool:
        if k < self.lo or k > self.hi:
            return self.bounded
        return k < self.hi or self.bounded


def homology_at(C: ChainComplex, k: int) -> HomologyGroup:
    """``ker d_k / im d_{k+1}``.

    Over a field this is ``dim C_k - rank d_k - rank d_{k+1}``. Over the
    integers the free rank comes from the same count and the torsion is that
    of ``C_k / im d_{k+1}``: since ``C_k / ker d_k`` embeds in the free module
    ``C_{k-1}``, ``ker d_k`` is a saturated sublattice and the two quotients
    have the same torsion.
    """
    _check_homology_ring(C.ring)
    if not C.has_homology_at(k):
        raise ComplexError(f"degree {k} out of range for a complex known on [{C.lo}, {C.hi}]")
    dim = C.dims.get(k, 0)
    if dim == 0:
        return HomologyGroup(C.ring, 0)
    rk = C.rank_of(k)
    bound = dim - rk
    nxt = C.d(k + 1)
    if C.ring.kind == INTEGERS:
        inv = smith_normal_form(nxt, upper_bound=bound) if nxt.nnz else []
        C._ranks.setdefault(k + 1, len(inv))
        return HomologyGroup(C.ring, bound - len(inv), tuple(d for d in inv if d > 1))
    r_next = fl.rank(nxt, bound) if nxt.nnz else 0
    C._ranks.setdefault(k + 1, r_next)
    return HomologyGroup(C.ring, bound - r_next)


@dataclass
class ExactnessReport:
    degrees: dict

    @property
    def exact(self) -> bool:
        return all(h.is_zero() for h in self.degrees.values())

    def failures(self) -> dict:
        return {k: h for k, h in self.degrees.items() if not h.is_zero()}


def is_exact(C: ChainComplex, degrees=None) -> ExactnessReport:
    if degrees is None:
        degrees = [k for k in range(C.lo, C.hi + 1) if C.has_homology_at(k)]
    return ExactnessReport({k: homology_at(C, k) for k in degrees})


# -- cokernel coordinates --------------------------------------------------------


def cokernel_projection(M: SparseMatrix):
    """Coordinates on ``R^rows / image(M)`` when that quotient is free.

    Returns ``(P, L)``: ``P`` (quotient rank x rows) maps a vector to its
    class and ``L`` (rows x quotient rank) lifts basis classes back, so
    ``P L = 1``. Over Z this uses a dense Smith reduction and raises if the
    quotient has torsion.
    """
    ring = M.ring
    _check_homology_ring(ring)
    if ring.is_field:
        P, free = fl.cokernel_projection_field(M)
        L = SparseMatrix.from_dict(M.rows, len(free), ring, {(i, k): 1 for k, i in enumerate(free)})
        return P, L
    dense = M.to_dense() if M.rows else []
    diag, U, Ui = smith_with_transforms(dense, M.cols)
    if any(abs(d) != 1 for d in diag):
        raise MatrixError("cokernel has torsion; no free coordinates")
    r = len(diag)
    q = M.rows - r
    P = SparseMatrix.from_dict(q, M.rows, ring, {(k, j): U[r + k][j] for k in range(q) for j in range(M.rows) if U[r + k][j]})
    L = SparseMatrix.from_dict(M.rows, q, ring, {(i, k): Ui[i][r + k] for k in range(q) for i in range(M.rows) if Ui[i][r + k]})
    return P, L


def universal_coefficient_dims(integral: dict, p: int) -> dict:
    """Predicted F_p dimensions from integral homology ``{k: HomologyGroup}``.

    ``dim H_k(C; F_p) = free_k + #{d in tors_k : p | d} + #{d in tors_{k-1} : p | d}``.
    """
    out = {}
    for k, h in integral.items():
        prev = integral.get(k - 1)
        extra = sum(1 for d in prev.torsion if d % p == 0) if prev is not None else 0
        out[k] = h.free_rank + sum(1 for d in h.torsion if d % p == 0) + extra
    return out
