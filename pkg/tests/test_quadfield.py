from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hermhecke.quadfield import (QuadExtElem, UnsupportedCaseError,
                                 ideal_valuation, parse_quad, rational)

small = st.fractions(max_denominator=20).filter(lambda f: abs(f) <= 30)


@given(small, small, small, small)
def test_field_axioms_193(a, b, c, d):
    x = QuadExtElem.of(a, b, 193)
    y = QuadExtElem.of(c, d, 193)
    assert (x + y) - y == x
    assert x * y == y * x
    if not y.is_zero():
        assert (x / y) * y == x


@given(small, small)
def test_norm_trace(a, b):
    x = QuadExtElem.of(a, b, 193)
    assert x.field_norm() == a * a - 193 * b * b
    assert x.trace() == 2 * a
    assert x * x.conjugate() == QuadExtElem.of(x.field_norm())


def test_parse_roundtrip():
    x = parse_quad("23319+162*sqrt(193)")
    assert x.rational_part == 23319 and x.surd_part == 162 and x.D == 193
    assert parse_quad("-1072") == rational(-1072)
    assert parse_quad("45-18*sqrt(-14)").D == -14


def test_mixed_rational_coercion():
    x = parse_quad("1+2*sqrt(193)")
    assert x + 1 == parse_quad("2+2*sqrt(193)")
    assert rational(5) * x == parse_quad("5+10*sqrt(193)")


def test_ideal_valuation_inert():
    # 193 is not a square mod 11, so 11 is inert in Q(sqrt(193))
    x = QuadExtElem.of(Fraction(1, 11), 11, 193)
    vals = ideal_valuation(x, 11, 193)
    assert vals == [("q", -1)]


def test_ideal_valuation_split():
    # 193 = 4^2 mod 59: split; sqrt(193)-4 is divisible by exactly one prime
    x = QuadExtElem.of(-4, 1, 193)
    vals = dict(ideal_valuation(x, 59, 193))
    assert set(vals) == {"q1", "q2"}
    assert sorted(vals.values()) == [0, 1]


def test_ideal_valuation_rational_split():
    vals = dict(ideal_valuation(QuadExtElem.of(59, 0, 193), 59, 193))
    assert vals == {"q1": 1, "q2": 1}


def test_unsupported_cases():
    with pytest.raises(UnsupportedCaseError):
        ideal_valuation(QuadExtElem.of(1, 1, 193), 2, 193)
