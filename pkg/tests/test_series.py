"""Truncated Laurent series arithmetic and precision tracking."""

from fractions import Fraction

import pytest

from ffec.errors import PrecisionError
from ffec.fpoly import GF
from ffec.series import QQ, Series


def test_basic_arithmetic():
    f = Series.from_list(QQ, 0, [Fraction(1), Fraction(2)], 10)
    g = Series.from_list(QQ, 0, [Fraction(3), Fraction(-2)], 10)
    assert (f + g).coeff(0) == 4
    assert (f * g).coeff(1) == 4
    assert (-f).coeff(1) == -2


def test_inverse_round_trip():
    f = Series(QQ, {-2: Fraction(3), 0: Fraction(1), 1: Fraction(5)}, 8)
    g = f.inverse()
    prod = f * g
    one = Series.constant(QQ, Fraction(1), prod.absprec)
    assert (prod - one).is_zero_to_precision()
    assert g.valuation == 2


def test_inverse_relative_precision():
    f = Series(QQ, {3: Fraction(2), 4: Fraction(1)}, 10)  # 7 known coefficients
    g = f.inverse()
    assert g.valuation == -3
    assert g.absprec == 4  # -3 + 7


def test_mul_precision_rule():
    f = Series(QQ, {2: Fraction(1)}, 10)
    g = Series(QQ, {3: Fraction(1)}, 6)
    assert (f * g).absprec == min(10 + 3, 6 + 2)


def test_pow_negative_and_zero():
    t = Series.monomial(QQ, 1, 12)
    assert (t**-2).valuation == -2
    assert (t**0).coeff(0) == 1


def test_zero_to_precision_flag():
    f = Series.zero(QQ, 5)
    assert f.is_zero_to_precision()
    assert f.valuation is None
    g = Series.monomial(QQ, 7, 5)  # beyond precision: discarded
    assert g.is_zero_to_precision()


def test_coeff_beyond_precision_raises():
    f = Series.monomial(QQ, 0, 4)
    with pytest.raises(PrecisionError):
        f.coeff(4)


def test_finite_field_coefficients():
    F5 = GF(5)
    f = Series.from_list(F5, 0, [1, 4, 2], 9)
    g = f * f
    assert g.coeff(0) == 1
    assert g.coeff(1) == (2 * 4) % 5
    inv = f.inverse()
    assert ((f * inv).coeff(0), (f * inv).coeff(1)) == (1, 0)


def test_eq_to_precision():
    f = Series.from_list(QQ, 0, [Fraction(1), Fraction(2)], 6)
    g = Series.from_list(QQ, 0, [Fraction(1), Fraction(2), Fraction(9)], 6)
    assert f.eq_to_precision(g, through=2)
    assert not f.eq_to_precision(g, through=3)
    with pytest.raises(PrecisionError):
        f.eq_to_precision(g, through=7)
