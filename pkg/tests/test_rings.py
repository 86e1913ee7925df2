from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diagram_homology.rings import GF, QQ, ZZ, NotAUnitError, Params, RingError, Zmod, parse_element, parse_ring


def test_arithmetic_examples():
    assert ZZ.mul(2, 3) == 6
    assert Zmod(6).add(4, 5) == 3
    assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)


def test_units():
    assert ZZ.is_invertible(1) and not ZZ.is_invertible(2)
    assert not Zmod(6).is_invertible(2)
    assert Zmod(5).is_invertible(2) and Zmod(5).inverse(2) == 3
    assert QQ.inverse(Fraction(7, 3)) == Fraction(3, 7)
    with pytest.raises(NotAUnitError):
        ZZ.inverse(2)
    with pytest.raises(NotAUnitError):
        Zmod(6).div(1, 4)


@pytest.mark.parametrize("spec,kind,mod", [("Z", "Z", 0), ("Q", "Q", 0), ("Zmod:6", "Zmod", 6), ("Fp:5", "Zmod", 5)])
def test_parse_ring(spec, kind, mod):
    R = parse_ring(spec)
    assert (R.kind, R.modulus) == (kind, mod)


@pytest.mark.parametrize("bad", ["Fp:6", "Zmod:1", "R", "Zmod:x", ""])
def test_parse_ring_rejects(bad):
    with pytest.raises(RingError):
        parse_ring(bad)


def test_fields():
    assert QQ.is_field and GF(3).is_field and not ZZ.is_field and not Zmod(6).is_field


def test_parse_element_fraction_only_over_Q():
    assert parse_element(QQ, "1/3") == Fraction(1, 3)
    assert parse_element(ZZ, "-2") == -2
    assert parse_element(Zmod(5), "7") == 2
    with pytest.raises(RingError):
        parse_element(ZZ, "1/3")
    with pytest.raises(RingError):
        parse_element(GF(5), "1/2")
    with pytest.raises(RingError):
        parse_element(ZZ, "abc")


def test_params():
    p = Params.make(Zmod(4), 5, -1)
    assert p == Params(1, 3)


def test_numpy_integers_coerce():
    import numpy as np

    assert ZZ(np.int64(4)) == 4 and isinstance(ZZ(np.int64(4)), int)


rings = st.sampled_from([ZZ, QQ, Zmod(6), Zmod(7), Zmod(12)])
ints = st.integers(-50, 50)


@given(rings, ints, ints, ints)
def test_ring_axioms(R, a, b, c):
    a, b, c = R(a), R(b), R(c)
    assert R.eq(R.add(R.add(a, b), c), R.add(a, R.add(b, c)))
    assert R.eq(R.mul(R.mul(a, b), c), R.mul(a, R.mul(b, c)))
    assert R.eq(R.mul(a, R.add(b, c)), R.add(R.mul(a, b), R.mul(a, c)))
    assert R.eq(R.mul(a, b), R.mul(b, a))
    assert R.eq(R.add(a, R.neg(a)), R.zero)


@given(rings, ints)
def test_inverse_law(R, a):
    a = R(a)
    if R.is_invertible(a):
        assert R.eq(R.mul(R.inverse(a), a), R.one)
