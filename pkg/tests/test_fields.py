from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pargroupoid.fields import GF, QQ, FieldError, FpElement, parse_field


def test_parse_field():
    assert parse_field("Q") == QQ
    assert parse_field("Fp:5") == GF(5)
    with pytest.raises(FieldError):
        parse_field("Fp:6")
    with pytest.raises(FieldError):
        parse_field("R")


def test_rational_format_roundtrip():
    for x in [Fraction(3, 4), Fraction(-2), Fraction(0), Fraction(-7, 3)]:
        assert QQ.parse(QQ.format(x)) == x
    assert QQ.format(Fraction(6, -4)) == "-3/2"


def test_prime_field_coercion():
    F = GF(5)
    assert F(Fraction(1, 2)) == F(3)
    assert F.format(F(-1)) == "4"
    with pytest.raises(FieldError):
        GF(3)(Fraction(1, 3))
    with pytest.raises(FieldError):
        GF(3)(1) + GF(5)(1)


@given(st.integers(), st.integers(min_value=1, max_value=10**6))
def test_prime_field_inverse(a, b):
    F = GF(7)
    x = F(a)
    if x:
        assert x * (F.one / x) == F.one
    assert (x + F(b)) - F(b) == x


def test_fp_truthiness():
    assert not FpElement(5, 5)
    assert FpElement(6, 5)
