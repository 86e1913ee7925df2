from __future__ import annotations

from fractions import Fraction

import pytest

from diagram_homology import modules as mods
from diagram_homology.algebra import MOTZKIN, ROOK_BRAUER, SYMMETRIC, build_algebra, inclusion_morphism, projection_morphism, regular_module, trivial_module
from diagram_homology.bar import BarComplex, BarError
from diagram_homology.linalg.homology import universal_coefficient_dims
from diagram_homology.resolution import TrivialResolution
from diagram_homology.rings import GF, QQ, ZZ, NotAUnitError, Params, Zmod
from diagram_homology.tor import (
    TorError,
    c2_oracle,
    choose_engine,
    composite_is_identity,
    induced_map_on_tor,
    shapiro_check,
    tor,
    tor_vanishing_JX,
)

P = Params(2, 1)


def strs(groups):
    return [str(g) for g in groups]


# -- bar complex ---------------------------------------------------------------------------------


def test_bar_ranks():
    A1 = build_algebra(ROOK_BRAUER, 1, ZZ, P)
    B = BarComplex(A1, trivial_module(A1), 3)
    assert [B.rank_in_degree(k) for k in range(4)] == [1, 1, 1, 1]
    A2 = build_algebra(ROOK_BRAUER, 2, ZZ, P)
    B = BarComplex(A2, trivial_module(A2), 3)
    assert [B.rank_in_degree(k) for k in range(4)] == [1, 9, 81, 729]
    with pytest.raises(BarError):
        BarComplex(A2, trivial_module(A2), 0)
    with pytest.raises(BarError):
        B.differential(4)


@pytest.mark.parametrize("family,n", [(ROOK_BRAUER, 2), (MOTZKIN, 2), (SYMMETRIC, 3)])
def test_bar_squares_to_zero(family, n):
    A = build_algebra(family, n, Zmod(6), Params(5, 1))
    C = BarComplex(A, mods.A_mod_J(A, (1,)) if family != SYMMETRIC else trivial_module(A), 3).chain_complex()
    assert C.square_failures() == []


# -- examples with independent oracles -----------------------------------------------------------


def test_symmetric_group_homology():
    # integral homology of S_2 = C_2 and S_3
    S2 = build_algebra(SYMMETRIC, 2, ZZ, P)
    assert strs(tor(S2, trivial_module(S2), 3)) == ["Z", "Z/2", "0", "Z/2"]
    S3 = build_algebra(SYMMETRIC, 3, ZZ, P)
    assert strs(tor(S3, trivial_module(S3), 3)) == ["Z", "Z/2", "0", "Z/6"]


def test_c2_oracle():
    assert strs(c2_oracle(ZZ, 3)) == ["Z", "Z/2", "0", "Z/2"]
    assert strs(c2_oracle(GF(2), 3)) == ["F2"] * 4
    assert strs(c2_oracle(GF(3), 2)) == ["F3", "0", "0"]


@pytest.mark.parametrize("eps", [1, -1])
@pytest.mark.parametrize("delta", [0, 1, 2])
def test_rbr_matches_symmetric(eps, delta):
    for n in (1, 2):
        A = build_algebra(ROOK_BRAUER, n, ZZ, Params(delta, eps))
        S = build_algebra(SYMMETRIC, n, ZZ, Params(delta, eps))
        assert strs(tor(A, trivial_module(A), 3)) == strs(tor(S, trivial_module(S), 3))


def test_rbr1_is_trivial():
    A = build_algebra(ROOK_BRAUER, 1, ZZ, P)
    assert strs(tor(A, trivial_module(A), 3)) == ["Z", "0", "0", "0"]


def test_motzkin_q_fraction_epsilon():
    A = build_algebra(MOTZKIN, 2, QQ, Params(Fraction(7), Fraction(1, 3)))
    assert strs(tor(A, trivial_module(A), 3)) == ["Q", "0", "0", "0"]


def test_non_unit_epsilon_gives_different_answer():
    # with epsilon = 0, RBr_1 is Z[T]/(T^2) and every Tor group is Z
    A = build_algebra(ROOK_BRAUER, 1, ZZ, Params(1, 0))
    assert strs(tor(A, trivial_module(A), 3)) == ["Z", "Z", "Z", "Z"]


@pytest.mark.parametrize("family,n", [(ROOK_BRAUER, 2), (MOTZKIN, 2), (SYMMETRIC, 3)])
def test_regular_module_is_flat(family, n):
    A = build_algebra(family, n, ZZ, P)
    g = tor(A, regular_module(A), 2)
    assert strs(g) == ["Z", "0", "0"]


def test_zmod_coefficients_refused():
    A = build_algebra(ROOK_BRAUER, 1, Zmod(6), P)
    with pytest.raises(TorError):
        tor(A, trivial_module(A), 1)


def test_negative_degree_refused():
    A = build_algebra(ROOK_BRAUER, 1, ZZ, P)
    with pytest.raises(TorError):
        tor(A, trivial_module(A), -1)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("family,n", [(ROOK_BRAUER, 2), (SYMMETRIC, 3)])
def test_universal_coefficients(p, family, n):
    A = build_algebra(family, n, ZZ, Params(2, -1))
    H = dict(enumerate(tor(A, trivial_module(A), 3)))
    Ap = build_algebra(family, n, GF(p), Params(2, -1))
    Hp = tor(Ap, trivial_module(Ap), 3, engine="bar")
    pred = universal_coefficient_dims(H, p)
    assert [g.free_rank for g in Hp] == [pred[k] for k in range(4)]


# -- engines ---------------------------------------------------------------------------------------


def test_engine_choice():
    A = build_algebra(MOTZKIN, 3, GF(2), P)
    assert choose_engine(A, trivial_module(A), 3) == "resolution"
    assert choose_engine(A, trivial_module(A), 1) == "bar"
    Z = build_algebra(MOTZKIN, 3, ZZ, P)
    assert choose_engine(Z, trivial_module(Z), 3) == "bar"
    with pytest.raises(TorError):
        choose_engine(Z, trivial_module(Z), 2, engine="resolution")
    with pytest.raises(TorError):
        choose_engine(A, trivial_module(A), 2, engine="spectral")


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("family,n", [(ROOK_BRAUER, 2), (MOTZKIN, 2), (SYMMETRIC, 3)])
def test_engines_agree(p, family, n):
    A = build_algebra(family, n, GF(p), Params(1, 1))
    modules = [trivial_module(A)]
    if family != SYMMETRIC:
        modules.append(mods.A_mod_J(A, (1,)))
    for N in modules:
        assert strs(tor(A, N, 3, engine="bar")) == strs(tor(A, N, 3, engine="resolution"))


def test_resolution_is_exact_and_deterministic():
    A = build_algebra(MOTZKIN, 2, GF(3), P)
    R1 = TrivialResolution(A)
    R1.extend_to(4)
    R2 = TrivialResolution(A)
    R2.extend_to(4)
    assert R1.gens == R2.gens
    C = R1.tensor_complex(trivial_module(A), 4)
    assert C.square_failures() == []


# -- J_X vanishing ----------------------------------------------------------------------------------


@pytest.mark.parametrize("family", [ROOK_BRAUER, MOTZKIN])
def test_vanishing_examples(family):
    A = build_algebra(family, 2, ZZ, Params(2, -1))
    for X in [(), (1,), (2,), (1, 2)]:
        rep = tor_vanishing_JX(A, X, 2)
        assert rep.ok, (X, strs(rep.groups))


def test_vanishing_empty_X_is_regular():
    A = build_algebra(ROOK_BRAUER, 2, ZZ, P)
    assert strs(tor_vanishing_JX(A, (), 2).groups) == strs(tor(A, regular_module(A), 2))


def test_vanishing_refuses_non_unit():
    A = build_algebra(ROOK_BRAUER, 2, ZZ, Params(1, 2))
    with pytest.raises(NotAUnitError, match="epsilon is not a unit in Z"):
        tor_vanishing_JX(A, (1,), 1)
    B = build_algebra(ROOK_BRAUER, 2, ZZ, Params(1, 0))
    with pytest.raises(NotAUnitError):
        tor_vanishing_JX(B, (1,), 1)


def test_vanishing_n3_f2():
    A = build_algebra(ROOK_BRAUER, 3, GF(2), P)
    assert tor_vanishing_JX(A, (1, 3), 2).ok


# -- induced maps ---------------------------------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3])
def test_iota_is_iso_on_tor(p):
    A = build_algebra(ROOK_BRAUER, 2, GF(p), P)
    rep = induced_map_on_tor(inclusion_morphism(A), 2)
    assert rep.commutes
    assert all(rep.is_iso(k) for k in range(3))


def test_pi_induced_map():
    A = build_algebra(ROOK_BRAUER, 2, GF(2), P)
    rep = induced_map_on_tor(projection_morphism(A), 2)
    assert rep.commutes and all(rep.is_iso(k) for k in range(3))


def test_induced_map_needs_field():
    A = build_algebra(ROOK_BRAUER, 2, ZZ, P)
    with pytest.raises(TorError):
        induced_map_on_tor(inclusion_morphism(A), 1)


@pytest.mark.parametrize("n", [1, 2])
def test_composite_identity(n):
    A = build_algebra(ROOK_BRAUER, n, ZZ, P)
    assert composite_is_identity(inclusion_morphism(A), projection_morphism(A), 2)


# -- Shapiro ---------------------------------------------------------------------------------------


@pytest.mark.parametrize("ring", [ZZ, GF(2)])
@pytest.mark.parametrize("n,m", [(2, 0), (2, 1), (2, 2), (3, 3)])
def test_shapiro(ring, n, m):
    rep = shapiro_check(n, m, ring, P, 2)
    assert rep.ok, (strs(rep.sym), strs(rep.rook_brauer))


def test_shapiro_extremes():
    rep = shapiro_check(2, 2, ZZ, P, 2)
    assert strs(rep.rook_brauer) == ["Z", "Z/2", "0"]
    rep = shapiro_check(2, 0, ZZ, P, 2)
    assert strs(rep.rook_brauer) == ["Z", "0", "0"]


def test_shapiro_refuses_non_unit():
    with pytest.raises(NotAUnitError):
        shapiro_check(2, 1, ZZ, Params(1, 2), 1)
