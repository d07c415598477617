from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kacstab.errors import ParseError, ZeroCharge
from kacstab.gaussian import GQ, PhaseKey, format_gq, parse_gq

rat = st.fractions(min_value=-5, max_value=5, max_denominator=6)
nonzero = st.tuples(rat, rat).filter(lambda p: p != (0, 0)).map(lambda p: GQ(*p))


@pytest.mark.parametrize("text,value", [
    ("-1+1i", GQ(-1, 1)), ("3/5+4/5i", GQ(Fraction(3, 5), Fraction(4, 5))), ("i", GQ(0, 1)),
    ("-2", GQ(-2, 0)), ("1/2-i", GQ(Fraction(1, 2), -1)), ("-i", GQ(0, -1)), (" 2 + 3i ", GQ(2, 3)),
])
def test_parse_gq(text, value):
    assert parse_gq(text) == value


@pytest.mark.parametrize("text", ["", "1+", "abc", "1/0", "2ii"])
def test_parse_gq_rejects(text):
    with pytest.raises(ParseError):
        parse_gq(text)


@settings(max_examples=100)
@given(nonzero)
def test_format_parse_round_trip(z):
    assert parse_gq(format_gq(z)) == z


def test_exact_phases():
    assert PhaseKey(GQ(0, 1)).exact() == Fraction(1, 2)
    assert PhaseKey(GQ(-1, 0)).exact() == 1
    assert PhaseKey(GQ(1, 0)).exact() == 2
    assert PhaseKey(GQ(1, 0), -1).exact() == 0
    assert PhaseKey(GQ(-1, -1)).exact() == Fraction(5, 4)


def test_zero_charge():
    with pytest.raises(ZeroCharge):
        PhaseKey(GQ(0, 0))


@settings(max_examples=200)
@given(nonzero, nonzero, st.integers(-2, 2), st.integers(-2, 2))
def test_order_matches_float_value(a, b, s, t):
    pa, pb = PhaseKey(a, s), PhaseKey(b, t)
    if abs(pa.value - pb.value) > 1e-9:
        assert (pa < pb) == (pa.value < pb.value)


@settings(max_examples=200)
@given(nonzero, st.integers(-2, 2), st.integers(-3, 3))
def test_shift_adds_integers(z, s, m):
    p = PhaseKey(z, s)
    assert abs(p.shift(m).value - (p.value + m)) < 1e-9
    assert p.shift(m).shift(-m) == p
    assert p.folded().value == pytest.approx(p.value % 1 or 1.0)


@settings(max_examples=200)
@given(nonzero, nonzero, st.integers(-2, 2), st.integers(-2, 2))
def test_difference(a, b, s, t):
    pa, pb = PhaseKey(a, s), PhaseKey(b, t)
    assert (pa - pb).value == pytest.approx(pa.value - pb.value, abs=1e-9)


def test_semiclosed_upper_half_plane():
    assert GQ(-1, 0).in_semiclosed_upper() and GQ(3, 1).in_semiclosed_upper()
    assert not GQ(1, 0).in_semiclosed_upper() and not GQ(0, -1).in_semiclosed_upper()


def test_hash_consistent_with_equality():
    assert PhaseKey(GQ(1, 1)) == PhaseKey(GQ(3, 3))
    assert hash(PhaseKey(GQ(1, 1))) == hash(PhaseKey(GQ(3, 3)))
    assert PhaseKey(GQ(1, 1)) != PhaseKey(GQ(1, 1), 1)
