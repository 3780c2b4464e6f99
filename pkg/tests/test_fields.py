from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from homotransfer.fields import GF, QQ, ExactField


def test_rational_parsing_and_format():
    x = QQ.parse("-3/6")
    assert QQ.format(x) == "-1/2"
    assert QQ(Fraction(2, 4)) == QQ.parse("1/2")
    assert QQ.format(QQ(7)) == "7"


def test_prime_field_symmetric_format():
    F = GF(7)
    assert F.format(F(6)) == "-1"
    assert F.format(F.parse("1/2")) == "-3"  # 2 * 4 = 8 = 1 mod 7
    assert F.inv(3) * 3 % 7 == 1


def test_rejects_composite_modulus():
    with pytest.raises(ValueError):
        GF(9)


def test_json_and_cli_spellings():
    assert ExactField.from_json("Q") == QQ
    assert ExactField.from_json({"Fp": 5}) == GF(5)
    assert ExactField.from_string("Fp:11") == GF(11)
    assert GF(11).to_json() == {"Fp": 11}
    with pytest.raises(ValueError):
        ExactField.from_string("R")


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        QQ.inv(QQ.zero)
    with pytest.raises(ZeroDivisionError):
        GF(5).inv(10)


@given(st.integers(-50, 50), st.integers(1, 50))
def test_rational_inverse(a, b):
    x = QQ(Fraction(a, b))
    if x:
        assert x * QQ.inv(x) == 1


@given(st.integers(1, 10**6))
def test_prime_field_inverse(a):
    F = GF(10007)
    if a % 10007:
        assert F.normalize(F(a) * F.inv(F(a))) == 1
