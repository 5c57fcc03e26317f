from fractions import Fraction

import mpmath
import pytest

from powersums.errors import DomainError
from powersums.intervals import (
    HighPrecReal,
    format_decimal,
    maximum,
    round_up_fraction,
)


def test_integer_is_a_point():
    x = HighPrecReal.exact(5)
    assert x.to_fractions() == (5, 5)
    assert x.error_radius == 0


def test_fraction_enclosure():
    x = HighPrecReal.exact(Fraction(1, 3), 64)
    lo, hi = x.to_fractions()
    assert lo < Fraction(1, 3) < hi
    assert hi - lo < Fraction(1, 2**60)


def test_log_contains_reference_value():
    x = HighPrecReal.exact(2, 256).log()
    with mpmath.workprec(400):
        ref = mpmath.log(2)
        lo, hi = x.to_fractions()
        assert mpmath.mpf(lo.numerator) / lo.denominator <= ref <= mpmath.mpf(hi.numerator) / hi.denominator
    assert x.error_radius < mpmath.mpf(10) ** -70


def test_sqrt_squared_contains_two():
    assert (HighPrecReal.exact(2).sqrt() ** 2).contains(2)


def test_arithmetic_with_plain_numbers():
    x = HighPrecReal.exact(3)
    assert (x + 1).to_fractions() == (4, 4)
    assert (1 - x).to_fractions() == (-2, -2)
    assert (2 * x).to_fractions() == (6, 6)
    assert (x / 2).to_fractions() == (Fraction(3, 2), Fraction(3, 2))
    assert (6 / x).to_fractions() == (2, 2)
    assert (-x).to_fractions() == (-3, -3)
    assert abs(-x).to_fractions() == (3, 3)


def test_floor_is_certified():
    assert HighPrecReal.exact(Fraction(7, 2)).floor() == 3
    assert HighPrecReal.from_bounds(Fraction(9, 10), Fraction(11, 10)).floor() is None
    assert HighPrecReal.from_bounds(Fraction(9, 10), Fraction(11, 10)).ceil_upper() == 2


def test_distance_to_nearest_integer():
    d = HighPrecReal.from_bounds(Fraction(29, 10), Fraction(32, 10)).distance_to_nearest_int()
    lo, hi = d.to_fractions()
    assert lo == 0
    assert Fraction(2, 10) <= hi < Fraction(2, 10) + Fraction(1, 2**200)

    d = HighPrecReal.exact(Fraction(13, 4)).distance_to_nearest_int()
    assert d.to_fractions() == (Fraction(1, 4), Fraction(1, 4))

    assert HighPrecReal.from_bounds(Fraction(1, 4), Fraction(3, 4)).distance_to_nearest_int() is None


def test_sign_queries():
    x = HighPrecReal.from_bounds(-1, 1)
    assert not x.is_positive() and not x.is_negative()
    assert HighPrecReal.exact(Fraction(1, 10)).is_positive()
    assert HighPrecReal.exact(-3).is_negative()
    assert HighPrecReal.exact(1).certainly_lt(2)
    assert not x.certainly_lt(0)


def test_domain_errors():
    with pytest.raises(DomainError):
        HighPrecReal.exact(0).log()
    with pytest.raises(DomainError):
        HighPrecReal.exact(-1).sqrt()
    with pytest.raises(ZeroDivisionError):
        HighPrecReal.exact(1) / HighPrecReal.from_bounds(-1, 1)


def test_maximum():
    a = HighPrecReal.from_bounds(0, 2)
    b = HighPrecReal.from_bounds(1, 3)
    assert maximum(a, b).to_fractions() == (1, 3)
    assert maximum(a, 5).to_fractions() == (5, 5)


def test_round_up_to_significant_digits():
    assert round_up_fraction(123456) == 123500
    assert round_up_fraction(123400) == 123400
    assert round_up_fraction(-1234567) == -1234000
    assert round_up_fraction(Fraction(1, 3)) == Fraction(3334, 10000)
    assert round_up_fraction(HighPrecReal.exact(2).log()) == Fraction(6932, 10000)
    assert round_up_fraction(0) == 0


def test_format_decimal():
    assert format_decimal(Fraction(34130000000000)) == "3.413e+13"
    assert format_decimal(Fraction(6239, 1000)) == "6.239"
    assert format_decimal(Fraction(123500)) == "1.235e+5"
    assert format_decimal(Fraction(12)) == "12"


def test_exports_are_plain_python_integers():
    x = HighPrecReal.exact(2, 128).log() * 10**30
    lo, hi = x.to_fractions()
    for value in (lo.numerator, lo.denominator, hi.numerator, hi.denominator):
        assert type(value) is int
    assert type(x.ceil_upper()) is int
    assert type(x.floor_upper()) is int
    assert type(HighPrecReal.exact(Fraction(7, 2)).floor()) is int
    assert lo - Fraction(1, 3) < hi


def test_mpmath_values_are_points():
    with mpmath.workprec(300):
        ref = mpmath.log(2)
    assert HighPrecReal.exact(2, 256).log().contains(ref)
    assert HighPrecReal.exact(1).certainly_lt(ref)
    assert not HighPrecReal.exact(1).certainly_le(mpmath.mpf(1) / 2)
    assert (HighPrecReal.exact(1) + mpmath.mpf(1) / 2).to_fractions() == (Fraction(3, 2), Fraction(3, 2))
    with pytest.raises(TypeError):
        HighPrecReal.exact(1).contains("1")
