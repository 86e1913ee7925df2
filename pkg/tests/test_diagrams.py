from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diagram_homology import diagrams as dg

FIG1 = "5; {-5,-3},{-4,2},{-2},{-1,3},{1,5},{4}"
FIG2_A = "5; {-1,4},{-2,-3},{-4,2},{1,3},{-5},{5}"
FIG2_B = "5; {-1,-3},{-2,1},{-4,5},{3,4},{-5},{2}"
FIG4 = "4; {-1,2},{-4,-2},{3,4},{-3},{1}"


def _telephone(m: int) -> int:
    # involutions of m points: T(m) = T(m-1) + (m-1) T(m-2)
    a, b = 1, 1
    for k in range(2, m + 1):
        a, b = b, b + (k - 1) * a
    return b if m else 1


def _motzkin(m: int) -> int:
    M = [1, 1]
    for k in range(2, m + 1):
        M.append(M[-1] + sum(M[i] * M[k - 2 - i] for i in range(k - 1)))
    return M[m]


def test_make_and_format_figure1():
    d = dg.make_diagram(5, [(-5, -3), (-4, 2), (-1, 3), (1, 5), (-2,), (4,)])
    assert dg.format_diagram(d) == FIG1
    assert dg.parse_diagram(FIG1) == d


def test_identity_rbr1():
    assert dg.make_diagram(1, [(-1, 1)]) == dg.identity(1)


@pytest.mark.parametrize("blocks", [[(-1, 1), (-1, 2)], [(3,)], [(0, 1)], [(-1, 1, 2)]])
def test_make_diagram_rejects(blocks):
    with pytest.raises(dg.DiagramError):
        dg.make_diagram(2, blocks)


@pytest.mark.parametrize("text", ["", "2 {-1,1}", "2; {-1,1", "x; {1}", "2; {-1,a}"])
def test_parse_rejects(text):
    with pytest.raises(dg.DiagramError):
        dg.parse_diagram(text)


def test_figure2_product():
    p = dg.multiply(dg.parse_diagram(FIG2_A), dg.parse_diagram(FIG2_B))
    assert (p.r, p.s) == (1, 1)
    # the listed gamma minus the duplicate {5}
    assert p.gamma == dg.make_diagram(5, [(-1, 5), (-2, -3), (-4, 1), (3, 4), (-5,), (2,)])
    assert str(p) == "delta^1 epsilon^1 * 5; {-5},{-4,1},{-3,-2},{-1,5},{2},{3,4}"


def test_small_products():
    T1 = dg.generator_t(2, 1)
    p = dg.multiply(T1, T1)
    assert (p.r, p.s, p.gamma) == (0, 1, T1)
    V = dg.generator_v(2, 1, 2)
    p = dg.multiply(V, V)
    assert (p.r, p.s, p.gamma) == (1, 0, V)


def test_identity_is_neutral():
    e = dg.identity(3)
    for a in dg.enumerate_rook_brauer(3):
        for p in (dg.multiply(e, a), dg.multiply(a, e)):
            assert (p.r, p.s, p.gamma) == (0, 0, a)


def test_strand_mismatch():
    with pytest.raises(dg.DiagramError):
        dg.multiply(dg.identity(2), dg.identity(3))


def test_generators_figure3():
    assert dg.generator_s(4, 2) == dg.make_diagram(4, [(-1, 1), (-3, 2), (-2, 3), (-4, 4)])
    assert dg.generator_v(4, 1, 3) == dg.make_diagram(4, [(-1, -3), (1, 3), (-2, 2), (-4, 4)])
    assert dg.generator_t(4, 3) == dg.make_diagram(4, [(-1, 1), (-2, 2), (-4, 4), (-3,), (3,)])
    with pytest.raises(dg.DiagramError):
        dg.generator_s(4, 4)
    with pytest.raises(dg.DiagramError):
        dg.generator_t(4, 5)
    with pytest.raises(dg.DiagramError):
        dg.generator_v(4, 2, 2)


def test_permutation_and_planarity():
    assert dg.is_permutation(dg.generator_s(4, 2))
    assert not dg.is_permutation(dg.generator_t(4, 3))
    assert dg.is_permutation(dg.identity(1))
    assert dg.is_planar(dg.parse_diagram(FIG4))
    assert not dg.is_planar(dg.generator_s(2, 1))
    assert not dg.is_planar(dg.parse_diagram(FIG1))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_rook_brauer_count(n):
    basis = dg.enumerate_rook_brauer(n)
    assert len(basis) == _telephone(2 * n)
    assert len(set(basis)) == len(basis)
    # lexicographic on canonical block lists
    assert list(basis) == sorted(basis, key=lambda d: d.blocks)
    assert dg.enumerate_rook_brauer(n) == basis


@pytest.mark.parametrize("n", [1, 2, 3])
def test_motzkin_count(n):
    basis = dg.enumerate_motzkin(n)
    assert len(basis) == _motzkin(2 * n)
    assert all(dg.is_planar(d) for d in basis)
    assert sum(dg.is_permutation(d) for d in basis) == 1


def test_permutation_count():
    assert len(dg.enumerate_permutations(3)) == 6


def test_embed_and_permutation_of():
    s = dg.permutation_diagram([2, 1])
    e = dg.embed(s, 4, 3)
    assert dg.permutation_of(e) == (1, 2, 4, 3)


diagram_3 = st.sampled_from(dg.enumerate_rook_brauer(3))


@settings(max_examples=60, deadline=None)
@given(diagram_3)
def test_roundtrip(d):
    assert dg.parse_diagram(dg.format_diagram(d)) == d


@settings(max_examples=80, deadline=None)
@given(diagram_3, diagram_3, diagram_3)
def test_associativity_with_scalars(a, b, c):
    ab = dg.multiply(a, b)
    left = dg.multiply(ab.gamma, c)
    bc = dg.multiply(b, c)
    right = dg.multiply(a, bc.gamma)
    assert left.gamma == right.gamma
    assert (ab.r + left.r, ab.s + left.s) == (bc.r + right.r, bc.s + right.s)


def test_planar_closed_under_product():
    M = dg.enumerate_motzkin(3)
    rng = random.Random(1)
    for _ in range(300):
        a, b = rng.choice(M), rng.choice(M)
        assert dg.is_planar(dg.multiply(a, b).gamma)
