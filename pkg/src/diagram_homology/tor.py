"""Tor groups and the theorem-level checks built on them."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import modules as mods
from .algebra import (
    ROOK_BRAUER,
    SYMMETRIC,
    AlgebraMorphism,
    BasedAlgebra,
    BasedModule,
    build_algebra,
    coinvariant_relations,
    inclusion_morphism,
    projection_morphism,
    regular_module,
    trivial_module,
)
from .bar import BarComplex
from .linalg import ChainComplex, HomologyGroup, SparseMatrix, cokernel_group, homology_at
from .linalg.field import kernel_basis, rank as field_rank
from .linalg.homology import ComplexError
from .resolution import trivial_resolution
from .rings import INTEGERS, INTEGERS_MOD, NotAUnitError, Params, Ring

# Past this many columns in the top bar differential, prime fields switch to
# the resolution engine.
BAR_COLUMN_LIMIT = 500_000


class TorError(ValueError):
    pass


def _check_ring(ring: Ring) -> None:
    if ring.kind != INTEGERS and not ring.is_field:
        raise TorError(f"Tor is computed over Z or a field, not {ring}")


def choose_engine(A: BasedAlgebra, N: BasedModule, max_degree: int, engine: str = "auto") -> str:
    if engine in ("bar", "resolution"):
        if engine == "resolution" and not (A.ring.kind == INTEGERS_MOD and A.ring.is_field):
            raise TorError("the resolution engine needs a prime field")
        return engine
    if engine != "auto":
        raise TorError(f"unknown engine {engine!r}")
    cols = (A.dim - 1) ** (max_degree + 1) * N.rank
    if A.ring.kind == INTEGERS_MOD and A.ring.is_field and cols > BAR_COLUMN_LIMIT:
        return "resolution"
    return "bar"


def tor_complex(A: BasedAlgebra, N: BasedModule, max_degree: int, engine: str = "auto") -> ChainComplex:
    """A complex whose homology in degrees ``0..max_degree`` is ``Tor^A(t, N)``."""
    _check_ring(A.ring)
    eng = choose_engine(A, N, max_degree, engine)
    if eng == "resolution":
        return trivial_resolution(A).tensor_complex(N, max_degree + 1)
    return BarComplex(A, N, max_degree + 1).chain_complex()


def tor(A: BasedAlgebra, N: BasedModule, max_degree: int, engine: str = "auto", check_degree0: bool = True) -> list[HomologyGroup]:
    """``Tor^A_k(t, N)`` for ``k = 0..max_degree``."""
    if max_degree < 0:
        raise TorError("max_degree must be nonnegative")
    C = tor_complex(A, N, max_degree, engine)
    groups = [homology_at(C, k) for k in range(max_degree + 1)]
    if check_degree0:
        co = coinvariants_group(N)
        if (co.free_rank, co.torsion) != (groups[0].free_rank, groups[0].torsion):
            raise TorError(f"degree 0 is {groups[0]} but the coinvariants are {co}")
    return groups


def coinvariants_group(N: BasedModule) -> HomologyGroup:
    """``t (x)_A N`` directly from relations (cross-check for Tor_0)."""
    return cokernel_group(coinvariant_relations(N))


# -- vanishing for A/J_X -------------------------------------------------------------


@dataclass
class VanishingReport:
    X: tuple
    groups: list
    degree0_ok: bool

    @property
    def vanishes(self) -> bool:
        return all(g.is_zero() for g in self.groups[1:])

    @property
    def ok(self) -> bool:
        return self.vanishes and self.degree0_ok


def require_unit_epsilon(A: BasedAlgebra) -> None:
    if not A.ring.is_invertible(A.params.epsilon):
        raise NotAUnitError(f"epsilon is not a unit in {A.ring}")


def tor_vanishing_JX(A: BasedAlgebra, X, max_degree: int, engine: str = "auto") -> VanishingReport:
    require_unit_epsilon(A)
    N = mods.A_mod_J(A, X)
    groups = tor(A, N, max_degree, engine)
    g0 = groups[0]
    ok0 = g0.free_rank == 1 and not g0.torsion
    return VanishingReport(tuple(sorted(X)), groups, ok0)


# -- induced maps -------------------------------------------------------------------------


def chain_map_matrix(f: AlgebraMorphism, Ns: BasedModule, Nt: BasedModule, module_map: SparseMatrix, k: int) -> SparseMatrix:
    """``f^{(x)k} (x) phi`` between bar complexes in degree ``k``.

    ``f`` must send complement vectors to multiples of complement vectors or
    to 0, which holds for the inclusion and projection of permutations.
    """
    S, T = f.source, f.target
    cs, ct = S.complement(), T.complement()
    pos_t = {g: i for i, g in enumerate(ct)}
    R = T.ring
    per = []
    for g in cs:
        im = f.image[g]
        if im is None:
            per.append(None)
            continue
        k_t, c = im
        if T.augmentation(k_t) != S.augmentation(g):
            raise TorError("the morphism does not preserve the augmentation")
        per.append((pos_t[k_t], c))
    Ds, Dt = len(cs), len(ct)
    rs, rt = Ns.rank, Nt.rank
    phi = module_map.entries
    entries = {}
    from itertools import product as iproduct

    for tup in iproduct(range(Ds), repeat=k):
        coeff = R.one
        tgt = 0
        dead = False
        for a in tup:
            im = per[a]
            if im is None:
                dead = True
                break
            tgt = tgt * Dt + im[0]
            coeff = R.mul(coeff, im[1])
        if dead:
            continue
        src = 0
        for a in tup:
            src = src * Ds + a
        for (y, x), v in phi.items():
            entries[(tgt * rt + y, src * rs + x)] = R.mul(coeff, v)
    return SparseMatrix.from_dict(Dt**k * rt, Ds**k * rs, R, entries)


@dataclass
class InducedMapReport:
    name: str
    degrees: dict = field(default_factory=dict)  # k -> (rank of f_*, dim source H, dim target H)
    commutes: bool = True

    def is_iso(self, k: int) -> bool:
        r, a, b = self.degrees[k]
        return r == a == b


def _homology_map_rank(Cs: ChainComplex, Ct: ChainComplex, F: SparseMatrix, k: int) -> tuple[int, int, int]:
    """Rank of the map induced on ``H_k`` over a field, plus both homology dimensions."""
    R = Cs.ring
    hs = homology_at(Cs, k).free_rank
    ht = homology_at(Ct, k).free_rank
    Z = kernel_basis(Cs.d(k)) if Cs.dims[k] else []
    if not Z:
        return 0, hs, ht
    ZM = SparseMatrix.from_columns(Cs.dims[k], R, Z)
    img = F @ ZM
    B = Ct.d(k + 1)
    both = SparseMatrix.from_dict(Ct.dims[k], img.cols + B.cols, R, {**img.entries, **{(i, img.cols + j): x for (i, j), x in B.entries.items()}})
    rb = field_rank(B) if B.nnz else 0
    return field_rank(both) - rb, hs, ht


def induced_map_on_tor(f: AlgebraMorphism, max_degree: int, Ns: BasedModule | None = None, Nt: BasedModule | None = None, module_map: SparseMatrix | None = None) -> InducedMapReport:
    """Chain map ``f^{(x)k}`` on bar complexes and the ranks of the induced maps on Tor (field coefficients)."""
    S, T = f.source, f.target
    if not S.ring.is_field:
        raise TorError("induced maps are compared as matrices over a field")
    if f.multiplicativity_failures():
        raise TorError("the map is not multiplicative")
    Ns = Ns or trivial_module(S)
    Nt = Nt or trivial_module(T)
    module_map = module_map if module_map is not None else SparseMatrix.identity(1, S.ring)
    K = max_degree + 1
    Bs = BarComplex(S, Ns, K).chain_complex()
    Bt = BarComplex(T, Nt, K).chain_complex()
    rep = InducedMapReport(f.name)
    maps = {k: chain_map_matrix(f, Ns, Nt, module_map, k) for k in range(K + 1)}
    for k in range(1, K + 1):
        if not (Bt.d(k) @ maps[k]) == (maps[k - 1] @ Bs.d(k)):
            rep.commutes = False
    for k in range(max_degree + 1):
        rep.degrees[k] = _homology_map_rank(Bs, Bt, maps[k], k)
    return rep


def composite_is_identity(i: AlgebraMorphism, p: AlgebraMorphism, max_degree: int) -> bool:
    """``pi o iota = id`` at the chain level on the bar complexes of RS_n (all degrees <= max_degree + 1)."""
    S = i.source
    t = trivial_module(S)
    one = SparseMatrix.identity(1, S.ring)
    tT = trivial_module(i.target)
    for k in range(max_degree + 2):
        a = chain_map_matrix(i, t, tT, one, k)
        b = chain_map_matrix(p, tT, t, one, k)
        if not (b @ a) == SparseMatrix.identity(a.cols, S.ring):
            return False
    return True


# -- Shapiro analogue ----------------------------------------------------------------------


@dataclass
class ShapiroReport:
    n: int
    m: int
    sym: list
    rook_brauer: list
    module_iso: bool
    module_rank: tuple

    @property
    def ok(self) -> bool:
        return self.module_iso and [str(g) for g in self.sym] == [str(g) for g in self.rook_brauer]


def quotient_tensor_check(n: int, m: int, ring: Ring, params: Params) -> tuple[bool, int, int]:
    """``RBr_n/J_m (x)_{RS_m} t`` against the box module: same rank, and the
    orbit-class map is a bijection onto boxes commuting with the generators."""
    A = build_algebra(ROOK_BRAUER, n, ring, params)
    ind = mods.InducedModule(A, m)
    Q = mods.A_mod_J(A, range(n - m + 1, n + 1))
    # classes of RBr_n/J_m under the right S_m action are exactly the box forms
    classes = {}
    for d in Q.labels:
        b = mods.box_form(d, m)
        if b is None:
            return False, -1, ind.rank
        classes.setdefault(b, []).append(d)
    rank = len(classes)
    if set(classes) != set(ind.boxes):
        return False, rank, ind.rank
    # the quotient map Q -> ind is A-linear
    R = ring
    F = SparseMatrix.from_columns(ind.rank, R, ({ind.position[mods.box_form(d, m)]: R.one} for d in Q.labels))
    for g in A.generators():
        if not (F @ Q.action_matrix(g)) == (ind.action_matrix(g) @ F):
            return False, rank, ind.rank
    return True, rank, ind.rank


def shapiro_check(n: int, m: int, ring: Ring, params: Params, max_degree: int, engine: str = "auto") -> ShapiroReport:
    A = build_algebra(ROOK_BRAUER, n, ring, params)
    require_unit_epsilon(A)
    S = build_algebra(SYMMETRIC, n, ring, params)
    left = tor(S, mods.InducedModule(S, m), max_degree, engine)
    right = tor(A, mods.InducedModule(A, m), max_degree, engine)
    iso, r1, r2 = quotient_tensor_check(n, m, ring, params)
    return ShapiroReport(n, m, left, right, iso, (r1, r2))


# -- independent oracle: the order-2 group -------------------------------------------------


def periodic_c2_complex(ring: Ring, top: int) -> ChainComplex:
    """``t (x)`` the periodic resolution ``... -> Z[C2] --(s-1)--> Z[C2] --(s+1)--> Z[C2] --(s-1)--> Z[C2]``.

    Group-ring elements ``a + b s`` act on the basis ``{1, s}``; applying the
    trivial module sends both basis vectors to 1.
    """

    def mult(a, b):
        return [[a, b], [b, a]]

    dims = {k: 1 for k in range(top + 1)}
    diffs = {}
    for k in range(1, top + 1):
        a, b = (-1, 1) if k % 2 == 1 else (1, 1)
        M = mult(a, b)
        # t (x) Z[C2] = Z via (x, y) -> x + y; the map on that quotient
        val = M[0][0] + M[1][0]
        diffs[k] = SparseMatrix.from_dense([[val]], ring)
    return ChainComplex(ring, dims, diffs, bounded=False)


def c2_oracle(ring: Ring, max_degree: int) -> list[HomologyGroup]:
    C = periodic_c2_complex(ring, max_degree + 1)
    return [homology_at(C, k) for k in range(max_degree + 1)]
