from __future__ import annotations

import io
import json
import os
import subprocess
import sys

import pytest

from diagram_homology.cli import EXIT_FAIL, EXIT_HYPOTHESIS, EXIT_OK, EXIT_USAGE, main

FIG2_A = "5; {-1,4},{-2,-3},{-4,2},{1,3},{-5},{5}"
FIG2_B = "5; {-1,-3},{-2,1},{-4,5},{3,4},{-5},{2}"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_multiply_figure2():
    code, out, _ = run("multiply", "--n", "5", "--lhs", FIG2_A, "--rhs", FIG2_B)
    assert code == EXIT_OK
    assert out == "delta^1 epsilon^1 * 5; {-5},{-4,1},{-3,-2},{-1,5},{2},{3,4}\n"


def test_multiply_bad_diagram_is_usage_error():
    code, _, err = run("multiply", "--n", "2", "--lhs", "2; {-1,1", "--rhs", "2; {-1,1},{-2,2}")
    assert code == EXIT_USAGE and "usage:" in err
    code, _, _ = run("multiply", "--n", "3", "--lhs", "2; {-1,1},{-2,2}", "--rhs", "2; {-1,1},{-2,2}")
    assert code == EXIT_USAGE


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["tor", "--n", "x"],
        ["tor", "--n", "2", "--ring", "R"],
        ["tor", "--n", "2", "--epsilon", "1/3"],
        ["tor", "--n", "2", "--family", "temperley"],
        ["tor", "--n", "-1"],
        ["tor", "--n", "2", "--module", "quotient", "--X", "3"],
        ["verify", "shapiro", "--n", "2", "--m", "3"],
        ["verify", "resolution", "--n", "2", "--x", "5"],
        ["enumerate", "--n", "2", "--format", "xml"],
    ],
)
def test_usage_errors(argv):
    code, _, err = run(*argv)
    assert code == EXIT_USAGE
    assert "usage:" in err


def test_non_unit_epsilon_exit_2():
    code, out, err = run("verify", "main-theorem", "--n", "2", "--ring", "Z", "--delta", "0", "--epsilon", "2")
    assert code == EXIT_HYPOTHESIS
    assert "epsilon is not a unit in Z" in err
    assert out == ""


def test_verify_motzkin_q_passes():
    code, out, _ = run("verify", "motzkin", "--n", "2", "--ring", "Q", "--delta", "7", "--epsilon", "1", "--max-degree", "3")
    assert code == EXIT_OK
    rows = [json.loads(line) for line in out.splitlines()]
    assert [r["computed"] for r in rows] == ["Q", "0", "0", "0"]
    assert all(r["pass"] for r in rows)


def test_report_fields():
    code, out, _ = run("verify", "vanishing", "--family", "motzkin", "--n", "2", "--X", "1,2", "--delta", "2", "--epsilon", "-1")
    assert code == EXIT_OK
    row = json.loads(out.splitlines()[0])
    assert list(row) == ["check-id", "family", "n", "ring", "delta", "epsilon", "X", "degree", "expected", "computed", "pass"]
    assert (row["family"], row["n"], row["ring"], row["X"], row["degree"]) == ("motzkin", 2, "Z", [1, 2], 0)


def test_failed_check_exit_1(monkeypatch):
    from diagram_homology import verify as vf

    real = vf.verify_motzkin

    def broken(*a, **k):
        recs = real(*a, **k)
        recs[0].passed = False
        return recs

    monkeypatch.setattr(vf, "verify_motzkin", broken)
    code, _, _ = run("verify", "motzkin", "--n", "1")
    assert code == EXIT_FAIL


def test_formats():
    base = ["verify", "resolution", "--family", "rbr", "--n", "2", "--X", "1,2", "--x", "1"]
    _, js, _ = run(*base)
    _, csv_text, _ = run(*base, "--format", "csv")
    _, text, _ = run(*base, "--format", "text")
    n = len(js.splitlines())
    assert n > 0
    assert len(csv_text.splitlines()) == n + 1
    assert csv_text.startswith("check-id,family,n,ring,delta,epsilon,X,degree,expected,computed,pass\n")
    assert len(text.splitlines()) == n
    assert all(line.startswith("PASS ") for line in text.splitlines())


def test_enumerate_counts():
    for fam, n, count in [("rook-brauer", 3, 76), ("motzkin", 3, 51), ("sym", 3, 6)]:
        code, out, _ = run("enumerate", "--family", fam, "--n", str(n))
        assert code == EXIT_OK and len(out.splitlines()) == count
    _, out, _ = run("enumerate", "--family", "rbr", "--n", "1", "--format", "text")
    assert out.splitlines() == ["# rook-brauer n=1: 2 diagrams", "1; {-1},{1}", "1; {-1,1}"]


def test_tor_and_dump(tmp_path):
    code, out, _ = run("tor", "--n", "2", "--max-degree", "3", "--dump-matrices", str(tmp_path))
    assert code == EXIT_OK
    assert [json.loads(line)["computed"] for line in out.splitlines()] == ["Z", "Z/2", "0", "Z/2"]
    assert sorted(os.listdir(tmp_path)) == ["d1.txt", "d2.txt", "d3.txt", "d4.txt"]
    from diagram_homology import SparseMatrix

    d2 = SparseMatrix.load((tmp_path / "d2.txt").read_text())
    assert d2.shape == (9, 81)


def test_tor_modules():
    _, out, _ = run("tor", "--n", "2", "--module", "induced", "--m", "2", "--max-degree", "1")
    assert [json.loads(line)["computed"] for line in out.splitlines()] == ["Z", "Z/2"]
    _, out, _ = run("tor", "--n", "2", "--module", "quotient", "--X", "1", "--max-degree", "1", "--ring", "Fp:3")
    assert [json.loads(line)["computed"] for line in out.splitlines()] == ["F3", "0"]


def test_basis_dump():
    code, out, _ = run("basis", "--n", "2", "--module", "quotient", "--X", "1,2")
    assert code == EXIT_OK
    assert out.splitlines() == ["2; {-2,1},{-1,2}", "2; {-2,2},{-1,1}"]


def test_golden_files(tmp_path):
    argv = ["verify", "decompose-B", "--family", "motzkin", "--n", "3", "--golden", str(tmp_path)]
    code, out, _ = run(*argv)
    assert code == EXIT_OK
    files = list((tmp_path / "verify-decompose-B").iterdir())
    assert len(files) == 1 and files[0].suffix == ".jsonl" and len(files[0].stem) == 16
    assert files[0].read_text() == out
    # output-only flags do not change the hash
    run(*argv, "--format", "text")
    assert len(list((tmp_path / "verify-decompose-B").iterdir())) == 1
    run(*argv[:-2], "--delta", "3", "--golden", str(tmp_path))
    assert len(list((tmp_path / "verify-decompose-B").iterdir())) == 2


def test_output_file(tmp_path):
    target = tmp_path / "r.jsonl"
    code, out, _ = run("verify", "summand", "--family", "rbr", "--n", "2", "--output", str(target))
    assert code == EXIT_OK and out == ""
    assert all(json.loads(line)["pass"] for line in target.read_text().splitlines())


def test_thread_count_determinism(monkeypatch):
    argv = ["verify", "vanishing", "--family", "rbr", "--n", "3", "--ring", "Fp:2"]
    outs = []
    for threads in ("1", "4", "1"):
        monkeypatch.setenv("DIAGRAM_HOMOLOGY_THREADS", threads)
        code, out, _ = run(*argv)
        assert code == EXIT_OK
        outs.append(out)
    assert outs[0] == outs[1] == outs[2]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "diagram_homology", "multiply", "--n", "5", "--lhs", FIG2_A, "--rhs", FIG2_B], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.startswith("delta^1 epsilon^1 * ")
    res = subprocess.run([sys.executable, "-m", "diagram_homology", "verify", "main-theorem", "--n", "2", "--epsilon", "2"], capture_output=True, text=True)
    assert res.returncode == 2 and "epsilon is not a unit in Z" in res.stderr
