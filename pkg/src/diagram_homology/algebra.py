"""Diagram algebras with structure constants, modules over them, and algebra maps."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Hashable, Sequence

from . import diagrams as dg
from .diagrams import Diagram
from .linalg import SparseMatrix
from .rings import Params, Ring

ROOK_BRAUER = "rook-brauer"
MOTZKIN = "motzkin"
SYMMETRIC = "sym-group-algebra"
FAMILIES = (ROOK_BRAUER, MOTZKIN, SYMMETRIC)


class AlgebraError(ValueError):
    pass


def _family_basis(family: str, n: int) -> tuple[Diagram, ...]:
    if family == ROOK_BRAUER:
        return dg.enumerate_rook_brauer(n)
    if family == MOTZKIN:
        return dg.enumerate_motzkin(n)
    if family == SYMMETRIC:
        return dg.enumerate_permutations(n)
    raise AlgebraError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


class BasedAlgebra:
    """A diagram algebra as a free R-module on its diagram basis.

    Products of basis diagrams are computed on demand and memoized:
    ``product(i, j)`` returns ``(k, c)`` meaning ``b_i b_j = c b_k``.
    """

    def __init__(self, family: str, n: int, ring: Ring, params: Params):
        self.family = family
        self.n = n
        self.ring = ring
        self.params = params
        self.basis = _family_basis(family, n)
        self.index = {d: i for i, d in enumerate(self.basis)}
        self.identity_index = self.index[dg.identity(n)]
        self.is_perm = [dg.is_permutation(d) for d in self.basis]
        self._partners = [d.partner for d in self.basis]
        self._products: dict[tuple[int, int], tuple[int, object]] = {}
        self._lock = threading.Lock()
        self._coeff_cache: dict[tuple[int, int], object] = {}

    def __repr__(self) -> str:
        return f"BasedAlgebra({self.family}, n={self.n}, {self.ring}, delta={self.params.delta}, epsilon={self.params.epsilon})"

    @property
    def dim(self) -> int:
        return len(self.basis)

    def augmentation(self, i: int) -> int:
        return 1 if self.is_perm[i] else 0

    def coefficient(self, r: int, s: int):
        key = (r, s)
        c = self._coeff_cache.get(key)
        if c is None:
            R = self.ring
            c = R.mul(R.pow(self.params.delta, r), R.pow(self.params.epsilon, s))
            self._coeff_cache[key] = c
        return c

    def product(self, i: int, j: int) -> tuple[int, object]:
        key = (i, j)
        hit = self._products.get(key)
        if hit is not None:
            return hit
        r, s, partner = dg.compose_partners(self.n, self._partners[i], self._partners[j])
        k = self.index.get(Diagram.from_partner(self.n, partner))
        if k is None:
            raise AlgebraError("product left the basis; the family is not closed")
        out = (k, self.coefficient(r, s))
        with self._lock:
            self._products[key] = out
        return out

    def multiply(self, u: dict, v: dict) -> dict:
        """Product of two elements given as ``{basis index: coefficient}``."""
        R = self.ring
        out: dict[int, object] = {}
        for i, a in u.items():
            for j, b in v.items():
                k, c = self.product(i, j)
                out[k] = R.add(out.get(k, R.zero), R.mul(R.mul(a, b), c))
        return {k: x for k, x in out.items() if not R.is_zero(x)}

    def element(self, d: Diagram, coeff=1) -> dict:
        if d not in self.index:
            raise AlgebraError(f"{d} is not a basis diagram of {self.family} n={self.n}")
        return {self.index[d]: self.ring(coeff)}

    def generators(self) -> list[int]:
        """An algebra generating set, used for equivariance and coinvariant checks.

        Rook-Brauer: the S_i, T_i and V_ij. Motzkin: every non-identity basis
        diagram (no presentation is assumed). Symmetric group: the S_i.
        """
        n = self.n
        gens: list[Diagram] = [dg.generator_s(n, i) for i in range(1, n)]
        if self.family == ROOK_BRAUER:
            gens += [dg.generator_t(n, i) for i in range(1, n + 1)]
            gens += [dg.generator_v(n, i, j) for i, j in combinations(range(1, n + 1), 2)]
        elif self.family == MOTZKIN:
            return [i for i in range(self.dim) if i != self.identity_index]
        return [self.index[g] for g in gens]

    def complement(self) -> list[int]:
        """Basis indices spanning the augmentation complement (all but the identity).

        Complement index t stands for ``b - aug(b) * 1`` with ``b`` the t-th
        non-identity diagram.
        """
        return [i for i in range(self.dim) if i != self.identity_index]

    def associativity_failures(self, triples) -> list[tuple[int, int, int]]:
        bad = []
        for i, j, k in triples:
            ij, c1 = self.product(i, j)
            left, c2 = self.product(ij, k)
            jk, c3 = self.product(j, k)
            right, c4 = self.product(i, jk)
            R = self.ring
            if left != right or not R.eq(R.mul(c1, c2), R.mul(c3, c4)):
                if not (R.is_zero(R.mul(c1, c2)) and R.is_zero(R.mul(c3, c4))):
                    bad.append((i, j, k))
        return bad


_ALGEBRA_CACHE: dict = {}
_ALGEBRA_LOCK = threading.Lock()


def build_algebra(family: str, n: int, ring: Ring, params: Params | None = None) -> BasedAlgebra:
    """Build (or fetch from cache) the based algebra of a family."""
    if n < 0:
        raise AlgebraError("n must be nonnegative")
    params = params or Params.make(ring)
    key = (family, n, ring, params)
    with _ALGEBRA_LOCK:
        alg = _ALGEBRA_CACHE.get(key)
        if alg is None:
            alg = BasedAlgebra(family, n, ring, params)
            _ALGEBRA_CACHE[key] = alg
    return alg


# -- modules -------------------------------------------------------------------


class BasedModule:
    """A left module, free over the ring, on a list of basis labels.

    ``act(i, j)`` gives basis diagram ``i`` applied to basis vector ``j`` as a
    sparse dict; action matrices are memoized.
    """

    def __init__(self, algebra: BasedAlgebra, labels: Sequence[Hashable], action: Callable[[int, int], dict], name: str = ""):
        self.algebra = algebra
        self.labels = list(labels)
        self._action = action
        self._act_cache: dict[tuple[int, int], dict] = {}
        self._matrices: dict[int, SparseMatrix] = {}
        self._lock = threading.Lock()
        self.name = name

    def __repr__(self) -> str:
        return f"BasedModule({self.name or '?'}, rank={self.rank})"

    @property
    def ring(self) -> Ring:
        return self.algebra.ring

    @property
    def rank(self) -> int:
        return len(self.labels)

    def act(self, i: int, j: int) -> dict:
        key = (i, j)
        hit = self._act_cache.get(key)
        if hit is None:
            hit = {k: x for k, x in self._action(i, j).items() if not self.ring.is_zero(x)}
            with self._lock:
                self._act_cache[key] = hit
        return hit

    def act_vector(self, i: int, v: dict) -> dict:
        R = self.ring
        out: dict[int, object] = {}
        for j, a in v.items():
            for k, x in self.act(i, j).items():
                out[k] = R.add(out.get(k, R.zero), R.mul(a, x))
        return {k: x for k, x in out.items() if not R.is_zero(x)}

    def action_matrix(self, i: int) -> SparseMatrix:
        M = self._matrices.get(i)
        if M is None:
            M = SparseMatrix.from_columns(self.rank, self.ring, (self.act(i, j) for j in range(self.rank)))
            with self._lock:
                self._matrices[i] = M
        return M

    def action_failures(self, triples) -> list:
        """Sampled check of ``(ab).v = a.(b.v)`` on ``(a, b, v)`` index triples."""
        A = self.algebra
        bad = []
        for a, b, v in triples:
            k, c = A.product(a, b)
            lhs = {j: self.ring.mul(c, x) for j, x in self.act(k, v).items()}
            lhs = {j: x for j, x in lhs.items() if not self.ring.is_zero(x)}
            rhs = self.act_vector(a, self.act(b, v))
            if lhs != rhs:
                bad.append((a, b, v))
        return bad

    def label_text(self, j: int) -> str:
        lab = self.labels[j]
        return str(lab)

    def dump(self) -> str:
        return "".join(self.label_text(j) + "\n" for j in range(self.rank))


def trivial_module(A: BasedAlgebra) -> BasedModule:
    """Rank one; permutation diagrams act as 1, everything else as 0."""
    one = A.ring.one
    return BasedModule(A, ["1"], lambda i, j: {0: one} if A.is_perm[i] else {}, name="t")


def regular_module(A: BasedAlgebra) -> BasedModule:
    def action(i, j):
        k, c = A.product(i, j)
        return {k: c}

    return BasedModule(A, list(A.basis), action, name=f"{A.family}_{A.n}")


class DiagramQuotientModule(BasedModule):
    """``span(numerator) / span(denominator)`` for diagram-spanned left ideals.

    The numerator must be closed under left multiplication by basis
    diagrams (checked as the action is evaluated) and the denominator must be a
    subset of it.
    """

    def __init__(self, algebra: BasedAlgebra, numerator, denominator=(), name: str = ""):
        num = sorted(set(numerator))
        den = set(denominator)
        if not den <= set(num):
            raise AlgebraError("denominator is not contained in the numerator")
        self.numerator = frozenset(num)
        self.denominator = frozenset(den)
        self.members = [i for i in num if i not in den]
        self.position = {i: p for p, i in enumerate(self.members)}
        labels = [algebra.basis[i] for i in self.members]
        super().__init__(algebra, labels, self._diagram_action, name=name)

    def _diagram_action(self, i: int, j: int) -> dict:
        k, c = self.algebra.product(i, self.members[j])
        if k in self.denominator:
            return {}
        p = self.position.get(k)
        if p is None:
            raise AlgebraError(f"{self.name}: numerator is not a left ideal")
        return {p: c}

    def label_text(self, j: int) -> str:
        return dg.format_diagram(self.labels[j])


# -- coinvariants ---------------------------------------------------------------


def coinvariant_relations(M: BasedModule, generators: Sequence[int] | None = None) -> SparseMatrix:
    """Columns ``g.v - aug(g) v`` spanning the kernel of ``M -> t (x)_A M``."""
    A = M.algebra
    R = M.ring
    gens = A.generators() if generators is None else generators
    cols = []
    for g in gens:
        e = A.augmentation(g)
        for j in range(M.rank):
            col = dict(M.act(g, j))
            if e:
                col[j] = R.sub(col.get(j, R.zero), R.one)
            cols.append(col)
    return SparseMatrix.from_columns(M.rank, R, cols) if cols else SparseMatrix.zero(M.rank, 0, R)


# -- algebra morphisms -----------------------------------------------------------


@dataclass
class AlgebraMorphism:
    """A map of based algebras sending each basis diagram to a multiple of a basis diagram or to 0."""

    source: BasedAlgebra
    target: BasedAlgebra
    image: list  # per source basis index: (target index, coefficient) or None
    name: str = ""

    def apply(self, u: dict) -> dict:
        R = self.target.ring
        out: dict[int, object] = {}
        for i, a in u.items():
            im = self.image[i]
            if im is None:
                continue
            k, c = im
            out[k] = R.add(out.get(k, R.zero), R.mul(a, c))
        return {k: x for k, x in out.items() if not R.is_zero(x)}

    def multiplicativity_failures(self) -> list[tuple[int, int]]:
        S, T = self.source, self.target
        bad = []
        for i in range(S.dim):
            for j in range(S.dim):
                k, c = S.product(i, j)
                lhs = self.apply({k: c})
                rhs = T.multiply(self.apply({i: S.ring.one}), self.apply({j: S.ring.one}))
                if lhs != rhs:
                    bad.append((i, j))
        return bad

    def preserves_augmentation(self) -> bool:
        S, T = self.source, self.target
        for i in range(S.dim):
            img = self.apply({i: S.ring.one})
            total = sum(T.ring(x) * T.augmentation(k) for k, x in img.items())
            if not T.ring.eq(total, S.augmentation(i)):
                return False
        return True

    def preserves_unit(self) -> bool:
        return self.image[self.source.identity_index] == (self.target.identity_index, self.target.ring.one)


def inclusion_morphism(A: BasedAlgebra) -> AlgebraMorphism:
    """``iota: RS_n -> A`` sending a permutation to its diagram."""
    S = build_algebra(SYMMETRIC, A.n, A.ring, A.params)
    one = A.ring.one
    return AlgebraMorphism(S, A, [(A.index[d], one) for d in S.basis], name="iota")


def projection_morphism(A: BasedAlgebra) -> AlgebraMorphism:
    """``pi: A -> RS_n`` fixing permutation diagrams and killing the rest."""
    S = build_algebra(SYMMETRIC, A.n, A.ring, A.params)
    one = A.ring.one
    img = [(S.index[d], one) if A.is_perm[i] else None for i, d in enumerate(A.basis)]
    return AlgebraMorphism(A, S, img, name="pi")
