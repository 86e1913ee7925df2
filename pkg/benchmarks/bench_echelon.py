"""Compiled vs pure-Python elimination on real bar-complex differentials.

    python3 benchmarks/bench_echelon.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

from diagram_homology import MOTZKIN, ROOK_BRAUER, Params, build_algebra, parse_ring, trivial_module
from diagram_homology.bar import BarComplex
from diagram_homology.linalg import kernels

CASES = [
    ("RBr_2 d3 over Z", ROOK_BRAUER, 2, "Z", 3),
    ("M_2 d4 over Z", MOTZKIN, 2, "Z", 4),
    ("M_3 d3 over Z", MOTZKIN, 3, "Z", 3),
    ("RBr_3 d2 over F3", ROOK_BRAUER, 3, "Fp:3", 2),
    ("M_3 d3 over F2", MOTZKIN, 3, "Fp:2", 3),
]


def _matrix(family, n, ring, k):
    R = parse_ring(ring)
    A = build_algebra(family, n, R, Params(R(1), R(1)))
    return BarComplex(A, trivial_module(A), k, check=False).differential(k)


def _run(M, backend):
    if M.ring.kind == "Z":
        E = kernels.int_echelon(M.rows, backend)
    else:
        E = kernels.modp_echelon(M.rows, M.ring.modulus, backend)
    t0 = time.perf_counter()
    E.add_csc(M.indptr, M.indices, M.data)
    # over Z this counts unit pivots only; the rest goes to the dense SNF
    return E.rank, time.perf_counter() - t0


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if kernels.BACKEND != "compiled":
        print("compiled kernels unavailable; only the Python timings are shown")
    print(f"{'case':<20} {'shape':>16} {'pivots':>6} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for name, fam, n, ring, k in CASES:
        M = _matrix(fam, n, ring, k)
        py = min(_run(M, "python")[1] for _ in range(args.repeat))
        r = _run(M, "python")[0]
        if kernels.BACKEND == "compiled":
            rc, _ = _run(M, "compiled")
            if rc != r:
                raise SystemExit(f"{name}: backends disagree on rank ({r} vs {rc})")
            co = min(_run(M, "compiled")[1] for _ in range(args.repeat))
            print(f"{name:<20} {str(M.shape):>16} {r:>6} {py:>10.3f} {co:>11.3f} {py / co:>7.1f}x")
        else:
            print(f"{name:<20} {str(M.shape):>16} {r:>6} {py:>10.3f} {'-':>11} {'-':>8}")


if __name__ == "__main__":
    main()
