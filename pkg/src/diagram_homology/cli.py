"""Command-line harness: ``diagram-homology <command> ...``.

Exit codes: 0 all checks pass, 1 a check failed, 2 a hypothesis of the
theorem is violated (epsilon not a unit), 64 the command line did not parse.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys

from . import diagrams as dg
from . import modules as mods
from .algebra import FAMILIES, MOTZKIN, ROOK_BRAUER, build_algebra, regular_module, trivial_module
from .linalg.homology import ComplexError
from .rings import NotAUnitError, Params, RingError, parse_element, parse_ring
from . import verify as vf
from .tor import TorError, tor, tor_complex

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_HYPOTHESIS = 2
EXIT_USAGE = 64

FAMILY_ALIASES = {"rbr": ROOK_BRAUER, "rook-brauer": ROOK_BRAUER, "motzkin": MOTZKIN, "m": MOTZKIN, "sym": "sym-group-algebra", "sym-group-algebra": "sym-group-algebra"}
VERIFY_KINDS = ("vanishing", "resolution", "summand", "decompose-B", "shapiro", "main-theorem", "motzkin")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p: argparse.ArgumentParser, family=True, ring=True, degree=None) -> None:
    if family:
        p.add_argument("--family", default="rook-brauer", help="rook-brauer, motzkin or sym-group-algebra")
    p.add_argument("--n", type=int, required=True)
    if ring:
        p.add_argument("--ring", default="Z", help="Z, Q, Zmod:m or Fp:p")
        p.add_argument("--delta", default="1")
        p.add_argument("--epsilon", default="1")
    if degree is not None:
        p.add_argument("--max-degree", type=int, default=degree)
        p.add_argument("--engine", default="auto", choices=("auto", "bar", "resolution"))
    p.add_argument("--format", default="json", choices=("json", "csv", "text"))
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--golden", metavar="DIR", help="also write DIR/<command>/<config-hash>.jsonl")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="diagram-homology", description="Diagram algebras and their Tor groups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("enumerate", help="list the basis diagrams of an algebra")
    _common(e, ring=False)

    m = sub.add_parser("multiply", help="multiply two diagrams")
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--lhs", required=True)
    m.add_argument("--rhs", required=True)

    t = sub.add_parser("tor", help="Tor groups of the trivial module with coefficients in a module")
    _common(t, degree=3)
    t.add_argument("--module", default="trivial", choices=("trivial", "regular", "quotient", "induced"))
    t.add_argument("--X", default="", help="comma list, for --module quotient")
    t.add_argument("--m", type=int, default=0, help="box size, for --module induced")
    t.add_argument("--dump-matrices", metavar="DIR", help="write each differential in the matrix dump format")

    b = sub.add_parser("basis", help="dump the basis of a module")
    _common(b)
    b.add_argument("--module", default="quotient", choices=("trivial", "regular", "quotient", "induced"))
    b.add_argument("--X", default="")
    b.add_argument("--m", type=int, default=0)

    v = sub.add_parser("verify", help="theorem-level checks")
    vs = v.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    for kind in VERIFY_KINDS:
        q = vs.add_parser(kind)
        deg = {"vanishing": 2, "shapiro": 2, "main-theorem": 3, "motzkin": 2}.get(kind)
        _common(q, family=kind in ("vanishing", "resolution", "summand", "decompose-B"), degree=deg)
        if kind in ("vanishing", "resolution", "summand", "decompose-B"):
            q.add_argument("--X", action="append", help="comma list (repeatable); default all subsets")
        if kind in ("resolution", "summand", "decompose-B"):
            q.add_argument("--x", type=int)
        if kind == "shapiro":
            q.add_argument("--m", type=int, required=True)
    return p


# -- helpers ---------------------------------------------------------------------------------


def _family(name: str) -> str:
    f = FAMILY_ALIASES.get(name.lower())
    if f is None or f not in FAMILIES:
        raise UsageError(f"unknown family {name!r}")
    return f


def _subset(text: str, n: int) -> tuple[int, ...]:
    text = text.strip().strip("{}")
    if not text:
        return ()
    try:
        X = tuple(sorted({int(t) for t in text.split(",") if t.strip()}))
    except ValueError:
        raise UsageError(f"bad subset {text!r}") from None
    if any(not 1 <= x <= n for x in X):
        raise UsageError(f"subset {text!r} is not inside 1..{n}")
    return X


def _ring_params(args):
    try:
        ring = parse_ring(args.ring)
        params = Params(parse_element(ring, args.delta), parse_element(ring, args.epsilon))
    except RingError as exc:
        raise UsageError(str(exc)) from None
    return ring, params


def config_hash(args) -> str:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in ("format", "output", "golden", "dump_matrices")}
    blob = json.dumps(cfg, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


CSV_FIELDS = ["check-id", "family", "n", "ring", "delta", "epsilon", "X", "degree", "expected", "computed", "pass"]


def render(records, fmt: str) -> str:
    rows = [r.as_dict() for r in records]
    if fmt == "json":
        return "".join(r.to_json() + "\n" for r in records)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({k: (json.dumps(v) if isinstance(v, (list, bool)) or v is None else v) for k, v in row.items()})
        return buf.getvalue()
    lines = []
    for row in rows:
        X = "" if row["X"] is None else " X={" + ",".join(map(str, row["X"])) + "}"
        deg = "" if row["degree"] is None else f" deg {row['degree']}"
        status = "PASS" if row["pass"] else "FAIL"
        lines.append(f"{status} {row['check-id']} {row['family']} n={row['n']} {row['ring']}{X}{deg}: expected {row['expected']}, computed {row['computed']}")
    return "".join(line + "\n" for line in lines)


def _emit(args, records, out) -> None:
    text = render(records, args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    if args.golden:
        name = args.command if args.command != "verify" else f"verify-{args.kind}"
        d = os.path.join(args.golden, name)
        os.makedirs(d, exist_ok=True)
        with open(os.path.join(d, config_hash(args) + ".jsonl"), "w") as fh:
            fh.write(render(records, "json"))


def _module(A, args):
    if args.module == "trivial":
        return trivial_module(A)
    if args.module == "regular":
        return regular_module(A)
    if args.module == "quotient":
        return mods.A_mod_J(A, _subset(args.X, A.n))
    if not 0 <= args.m <= A.n:
        raise UsageError("--m must lie in 0..n")
    return mods.InducedModule(A, args.m)


# -- commands ----------------------------------------------------------------------------------


def cmd_enumerate(args, out) -> int:
    fam = _family(args.family)
    basis = {ROOK_BRAUER: dg.enumerate_rook_brauer, MOTZKIN: dg.enumerate_motzkin}.get(fam, dg.enumerate_permutations)(args.n)
    if args.format == "json":
        for i, d in enumerate(basis):
            out.write(json.dumps({"family": fam, "n": args.n, "index": i, "diagram": dg.format_diagram(d)}) + "\n")
    elif args.format == "csv":
        out.write("index,diagram\n")
        for i, d in enumerate(basis):
            out.write(f'{i},"{dg.format_diagram(d)}"\n')
    else:
        out.write(f"# {fam} n={args.n}: {len(basis)} diagrams\n")
        for d in basis:
            out.write(dg.format_diagram(d) + "\n")
    return EXIT_OK


def cmd_multiply(args, out) -> int:
    try:
        a = dg.parse_diagram(args.lhs)
        b = dg.parse_diagram(args.rhs)
    except dg.DiagramError as exc:
        raise UsageError(str(exc)) from None
    if a.n != args.n or b.n != args.n:
        raise UsageError(f"both diagrams must have n = {args.n}")
    out.write(str(dg.multiply(a, b)) + "\n")
    return EXIT_OK


def cmd_tor(args, out) -> int:
    fam = _family(args.family)
    ring, params = _ring_params(args)
    if args.max_degree < 0:
        raise UsageError("--max-degree must be nonnegative")
    A = build_algebra(fam, args.n, ring, params)
    N = _module(A, args)
    groups = tor(A, N, args.max_degree, args.engine)
    if args.dump_matrices:
        C = tor_complex(A, N, args.max_degree, args.engine)
        os.makedirs(args.dump_matrices, exist_ok=True)
        for k in range(1, args.max_degree + 2):
            with open(os.path.join(args.dump_matrices, f"d{k}.txt"), "w") as fh:
                fh.write(C.d(k).dump())
    ctx = vf.Context(fam, args.n, ring, params, args.ring)
    X = list(_subset(args.X, args.n)) if args.module == "quotient" else None
    for k, g in enumerate(groups):
        ctx.add(f"tor/{args.module}", None, str(g), X=X, degree=k, passed=True)
    _emit(args, ctx.records, out)
    return EXIT_OK


def cmd_basis(args, out) -> int:
    fam = _family(args.family)
    ring, params = _ring_params(args)
    A = build_algebra(fam, args.n, ring, params)
    N = _module(A, args)
    out.write(N.dump())
    return EXIT_OK


def cmd_verify(args, out) -> int:
    ring, params = _ring_params(args)
    kind = args.kind
    label = args.ring
    if kind == "main-theorem":
        records = vf.verify_main_theorem(args.n, ring, params, args.max_degree, args.engine, label)
    elif kind == "motzkin":
        records = vf.verify_motzkin(args.n, ring, params, args.max_degree, args.engine, label)
    elif kind == "shapiro":
        if not 0 <= args.m <= args.n:
            raise UsageError("--m must lie in 0..n")
        records = vf.verify_shapiro(args.n, args.m, ring, params, args.max_degree, args.engine, label)
    else:
        fam = _family(args.family)
        X_list = None if not args.X else [_subset(x, args.n) for x in args.X]
        if kind == "vanishing":
            records = vf.verify_vanishing(fam, args.n, ring, params, X_list, args.max_degree, args.engine, label)
        else:
            if args.x is not None and not 1 <= args.x <= args.n:
                raise UsageError("--x must lie in 1..n")
            fn = {"resolution": vf.verify_resolution, "summand": vf.verify_summand, "decompose-B": vf.verify_decompose_B}[kind]
            records = fn(fam, args.n, ring, params, X_list, args.x, label)
    _emit(args, records, out)
    return EXIT_OK if vf.all_passed(records) else EXIT_FAIL


COMMANDS = {"enumerate": cmd_enumerate, "multiply": cmd_multiply, "tor": cmd_tor, "basis": cmd_basis, "verify": cmd_verify}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "n", 1) is not None and args.n < 0:
            raise UsageError("--n must be nonnegative")
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(parser.format_usage())
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except NotAUnitError as exc:
        err.write(f"{exc}\n")
        return EXIT_HYPOTHESIS
    except (TorError, ComplexError, mods.ModuleError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
