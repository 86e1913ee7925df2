"""Theorem-level verifiers producing one report record per check."""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from . import modules as mods
from .algebra import (
    MOTZKIN,
    ROOK_BRAUER,
    SYMMETRIC,
    build_algebra,
    inclusion_morphism,
    projection_morphism,
    trivial_module,
)
from .linalg import HomologyGroup
from .linkstates import interval_partitions
from .rings import INTEGERS_MOD, Params, Ring
from .tor import (
    c2_oracle,
    composite_is_identity,
    induced_map_on_tor,
    quotient_tensor_check,
    require_unit_epsilon,
    tor,
)

THREADS_ENV = "DIAGRAM_HOMOLOGY_THREADS"

# composite_is_identity walks every tuple; skip it past this many
COMPOSITE_LIMIT = 200_000


def ring_spec(ring: Ring) -> str:
    if ring.kind == INTEGERS_MOD and ring.is_field:
        return f"Fp:{ring.modulus}"
    return str(ring)


def _literal(x) -> str:
    return str(x)


@dataclass
class CheckRecord:
    check_id: str
    family: str
    n: int
    ring: str
    delta: str
    epsilon: str
    X: list | None = None
    degree: int | None = None
    expected: object = None
    computed: object = None
    passed: bool = False

    def as_dict(self) -> dict:
        return {
            "check-id": self.check_id,
            "family": self.family,
            "n": self.n,
            "ring": self.ring,
            "delta": self.delta,
            "epsilon": self.epsilon,
            "X": self.X,
            "degree": self.degree,
            "expected": self.expected,
            "computed": self.computed,
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=False, separators=(", ", ": "))


@dataclass
class Context:
    """Shared fields of every record produced by one verifier call."""

    family: str
    n: int
    ring: Ring
    params: Params
    ring_label: str = ""
    records: list = field(default_factory=list)

    def add(self, check_id: str, expected, computed, X=None, degree=None, passed=None) -> CheckRecord:
        ok = expected == computed if passed is None else bool(passed)
        rec = CheckRecord(
            check_id,
            self.family,
            self.n,
            self.ring_label or ring_spec(self.ring),
            _literal(self.params.delta),
            _literal(self.params.epsilon),
            sorted(X) if X is not None else None,
            degree,
            expected,
            computed,
            ok,
        )
        self.records.append(rec)
        return rec


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "")
    try:
        k = int(raw)
    except ValueError:
        k = 1
    return max(1, k)


def run_tasks(tasks, threads: int | None = None) -> list:
    """Run zero-argument callables, returning results in task order."""
    threads = thread_count() if threads is None else max(1, threads)
    if threads == 1 or len(tasks) <= 1:
        return [t() for t in tasks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda t: t(), tasks))


def _one(ring: Ring) -> str:
    return str(HomologyGroup(ring, 1))


def all_subsets(n: int) -> list[tuple[int, ...]]:
    return [c for k in range(n + 1) for c in combinations(range(1, n + 1), k)]


# -- main theorem -------------------------------------------------------------------------


def verify_main_theorem(n: int, ring: Ring, params: Params, max_degree: int = 3, engine: str = "auto", ring_label: str = "") -> list[CheckRecord]:
    """Tor^{RBr_n}(t, t) against Tor^{RS_n}(t, t), plus the morphism checks."""
    A = build_algebra(ROOK_BRAUER, n, ring, params)
    require_unit_epsilon(A)
    S = build_algebra(SYMMETRIC, n, ring, params)
    ctx = Context(ROOK_BRAUER, n, ring, params, ring_label)
    rb = tor(A, trivial_module(A), max_degree, engine)
    sy = tor(S, trivial_module(S), max_degree, engine)
    for k in range(max_degree + 1):
        ctx.add("main-theorem/tor", str(sy[k]), str(rb[k]), degree=k)
    if n == 2 and ring.kind == "Z":
        oracle = c2_oracle(ring, max_degree)
        for k in range(max_degree + 1):
            ctx.add("main-theorem/c2-oracle", str(oracle[k]), str(rb[k]), degree=k)
    pi = projection_morphism(A)
    iota = inclusion_morphism(A)
    ctx.add("main-theorem/pi-multiplicative", 0, len(pi.multiplicativity_failures()))
    ctx.add("main-theorem/pi-augmentation", True, pi.preserves_augmentation())
    if (A.dim - 1) ** (max_degree + 1) <= COMPOSITE_LIMIT:
        ctx.add("main-theorem/pi-iota-identity", True, composite_is_identity(iota, pi, max_degree))
        if ring.is_field:
            rep = induced_map_on_tor(iota, max_degree)
            ctx.add("main-theorem/iota-chain-map", True, rep.commutes)
            for k in range(max_degree + 1):
                r, a, b = rep.degrees[k]
                ctx.add("main-theorem/iota-iso", [a, a, a], [r, a, b], degree=k)
    return ctx.records


# -- Motzkin ----------------------------------------------------------------------------------


def verify_motzkin(n: int, ring: Ring, params: Params, max_degree: int = 2, engine: str = "auto", ring_label: str = "") -> list[CheckRecord]:
    A = build_algebra(MOTZKIN, n, ring, params)
    require_unit_epsilon(A)
    ctx = Context(MOTZKIN, n, ring, params, ring_label)
    groups = tor(A, trivial_module(A), max_degree, engine)
    for k, g in enumerate(groups):
        ctx.add("motzkin/tor", _one(ring) if k == 0 else "0", str(g), degree=k)
    return ctx.records


# -- vanishing for A/J_X ----------------------------------------------------------------------


def verify_vanishing(family: str, n: int, ring: Ring, params: Params, X_list=None, max_degree: int = 2, engine: str = "auto", ring_label: str = "") -> list[CheckRecord]:
    A = build_algebra(family, n, ring, params)
    require_unit_epsilon(A)
    X_list = all_subsets(n) if X_list is None else [tuple(sorted(X)) for X in X_list]

    def task(X):
        def run():
            ctx = Context(family, n, ring, params, ring_label)
            groups = tor(A, mods.A_mod_J(A, X), max_degree, engine)
            for k, g in enumerate(groups):
                ctx.add("vanishing/tor", _one(ring) if k == 0 else "0", str(g), X=X, degree=k)
            return ctx.records

        return run

    out = []
    for recs in run_tasks([task(X) for X in X_list]):
        out.extend(recs)
    return out


# -- inductive resolution ---------------------------------------------------------------------


def valid_pairs(n: int, X_list=None, x=None) -> list[tuple[tuple[int, ...], int]]:
    X_list = all_subsets(n) if X_list is None else [tuple(sorted(X)) for X in X_list]
    pairs = []
    for X in X_list:
        for y in X:
            if x is None or y == x:
                pairs.append((X, y))
    return pairs


def verify_resolution(family: str, n: int, ring: Ring, params: Params, X_list=None, x=None, ring_label: str = "") -> list[CheckRecord]:
    A = build_algebra(family, n, ring, params)

    def task(X, y):
        def run():
            ctx = Context(family, n, ring, params, ring_label)
            rep = mods.resolution_complex(A, X, y)
            for k, h in sorted(rep.exact.items()):
                ctx.add(f"resolution/exact/x={y}", "0", str(h), X=X, degree=k)
            for k, h in sorted(rep.tensored_exact.items()):
                ctx.add(f"resolution/tensored-exact/x={y}", "0", str(h), X=X, degree=k)
            return ctx.records

        return run

    out = []
    for recs in run_tasks([task(X, y) for X, y in valid_pairs(n, X_list, x)]):
        out.extend(recs)
    return out


# -- summands and decompositions -----------------------------------------------------------------


def _summand_records(ctx: Context, X, rep) -> None:
    ctx.add(f"summand/{rep.name}", True, rep.ok, X=X)


def verify_summand(family: str, n: int, ring: Ring, params: Params, X_list=None, x=None, ring_label: str = "") -> list[CheckRecord]:
    A = build_algebra(family, n, ring, params)
    require_unit_epsilon(A)
    ctx = Context(family, n, ring, params, ring_label)
    for X, y in valid_pairs(n, X_list, x):
        for rep in mods.summand_checks_rook_brauer(A, X, y):
            _summand_records(ctx, X, rep)
        if family == MOTZKIN:
            for z in sorted(set(X) - {y}):
                a, b = min(y, z), max(y, z)
                for part in interval_partitions(a, b, containing=(a, b)):
                    rep = mods.y_summand_check(A, X, part)
                    if rep is not None:
                        _summand_records(ctx, X, rep)
    return ctx.records


def verify_decompose_B(family: str, n: int, ring: Ring, params: Params, X_list=None, x=None, ring_label: str = "") -> list[CheckRecord]:
    A = build_algebra(family, n, ring, params)
    require_unit_epsilon(A)
    ctx = Context(family, n, ring, params, ring_label)
    for X, y in valid_pairs(n, X_list, x):
        if len(X) < 2:
            continue
        rep = mods.decompose_B(A, X, y)
        ctx.add(f"decompose-B/bijection/x={y}", rep.target_rank, sum(rep.summand_ranks), X=X, passed=rep.bijective)
        ctx.add(f"decompose-B/equivariant/x={y}", True, rep.equivariant, X=X)
    return ctx.records


# -- Shapiro analogue -------------------------------------------------------------------------------


def verify_shapiro(n: int, m: int, ring: Ring, params: Params, max_degree: int = 2, engine: str = "auto", ring_label: str = "") -> list[CheckRecord]:
    A = build_algebra(ROOK_BRAUER, n, ring, params)
    require_unit_epsilon(A)
    ctx = Context(ROOK_BRAUER, n, ring, params, ring_label)
    X = list(range(n - m + 1, n + 1))
    orc = mods.induced_module_oracle(n, m, ROOK_BRAUER, ring, params)
    ctx.add(f"shapiro/induced-rank/m={m}", orc.rank, orc.box_rank, X=X, passed=orc.isomorphic)
    free, orbits, size = mods.orbit_check(n, m, ring, params)
    ctx.add(f"shapiro/free-orbits/m={m}", size, orbits * _factorial(m), X=X, passed=free and orbits * _factorial(m) == size)
    iso, r1, r2 = quotient_tensor_check(n, m, ring, params)
    ctx.add(f"shapiro/quotient-tensor/m={m}", r2, r1, X=X, passed=iso)
    S = build_algebra(SYMMETRIC, n, ring, params)
    left = tor(S, mods.InducedModule(S, m), max_degree, engine)
    right = tor(A, mods.InducedModule(A, m), max_degree, engine)
    for k in range(max_degree + 1):
        ctx.add(f"shapiro/tor/m={m}", str(left[k]), str(right[k]), X=X, degree=k)
    return ctx.records


def _factorial(m: int) -> int:
    from math import factorial

    return factorial(m)


def all_passed(records) -> bool:
    return all(r.passed for r in records)
