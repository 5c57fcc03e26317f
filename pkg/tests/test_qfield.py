import random
from fractions import Fraction

import mpmath
import pytest

from powersums.errors import DomainError
from powersums.qfield import QuadElem, ceil, floor, log_height, minimal_polynomial, to_real

ALPHA = QuadElem(3, 2, 2)


def test_canonical_form():
    assert QuadElem(0, 1, 8) == QuadElem(0, 2, 2)
    assert hash(QuadElem(0, 1, 8)) == hash(QuadElem(0, 2, 2))
    assert QuadElem(1, 1, 4) == QuadElem(3)
    assert QuadElem(5, 0, 7) == 5
    assert QuadElem(2, 3, 0) == 2


def test_field_arithmetic_is_exact():
    beta = ALPHA.conjugate()
    assert ALPHA + beta == 6
    assert ALPHA * beta == 1
    assert ALPHA - beta == QuadElem(0, 4, 2)
    assert ALPHA**2 == QuadElem(17, 12, 2)
    assert ALPHA**-1 == beta
    x = QuadElem(Fraction(1, 2), 3, 2)
    assert (x / ALPHA) * ALPHA == x
    assert 1 / ALPHA == beta


def test_incompatible_fields():
    with pytest.raises(ValueError):
        QuadElem.sqrt(2) + QuadElem.sqrt(3)
    with pytest.raises(DomainError):
        QuadElem(0, 1, -3)


def test_conjugation_is_an_involution():
    assert ALPHA.conjugate().conjugate() == ALPHA
    assert QuadElem(Fraction(5, 3)).conjugate() == Fraction(5, 3)


def test_exact_sign_and_order():
    assert QuadElem(3, -2, 2).sign() == 1
    assert QuadElem(-3, 2, 2).sign() == -1
    assert QuadElem(1, -1, 2).sign() == -1
    assert ALPHA > 5
    assert ALPHA < 6
    assert abs(QuadElem(1, -1, 2)) == QuadElem(-1, 1, 2)
    assert floor(ALPHA) == 5
    assert ceil(ALPHA) == 6
    assert floor(QuadElem(Fraction(7, 2))) == 3


def test_to_real():
    x = to_real(ALPHA, 64)
    assert abs(float(x) - 5.828427124746190) < 1e-14
    assert x.error_radius <= mpmath.mpf(2) ** -62 * (1 + 3 + 2 * mpmath.sqrt(2))
    assert abs(float(to_real(QuadElem(0, 4, 2), 64)) - 5.656854249492381) < 1e-14
    assert to_real(QuadElem(Fraction(1, 2), 0, 5), 64).to_fractions() == (Fraction(1, 2), Fraction(1, 2))


def test_to_real_precisions_agree():
    coarse = to_real(ALPHA, 64)
    fine = to_real(ALPHA, 128)
    assert abs(fine.value - coarse.value) <= coarse.error_radius + fine.error_radius


def test_minimal_polynomial():
    assert minimal_polynomial(ALPHA) == (1, -6, 1)
    assert minimal_polynomial(QuadElem(0, 4, 2)) == (1, 0, -32)
    assert minimal_polynomial(QuadElem(Fraction(5, 3))) == (3, -5)
    assert minimal_polynomial(QuadElem(Fraction(1, 2), Fraction(1, 2), 5)) == (1, -1, -1)


def test_heights():
    with mpmath.workprec(400):
        log3 = mpmath.log(3)
        shifted = log3 + mpmath.mpf(2) ** -100
    assert log_height(QuadElem(3)).contains(log3)
    assert not log_height(QuadElem(3)).contains(shifted)
    assert 1.0986 < float(log_height(QuadElem(3))) < 1.0987
    assert 0.8813 < float(log_height(ALPHA)) < 0.8814
    assert log_height(QuadElem(1)).to_fractions() == (0, 0)
    assert 1.7328 < float(log_height(QuadElem(0, 4, 2))) < 1.7329
    assert 1.6094 < float(log_height(QuadElem(Fraction(-5, 3)))) < 1.6095
    with pytest.raises(DomainError):
        log_height(QuadElem(0))


def _random_elem(rng):
    while True:
        e = QuadElem(Fraction(rng.randint(-9, 9), rng.randint(1, 4)), rng.randint(-5, 5), 2)
        if e:
            return e


def test_height_properties_on_random_elements():
    rng = random.Random(20240517)
    log2 = float(mpmath.log(2))
    for _ in range(60):
        eta, gamma = _random_elem(rng), _random_elem(rng)
        h_eta, h_gamma = log_height(eta), log_height(gamma)
        slack = 1e-30
        assert (log_height(eta * gamma).lower_float()) <= (h_eta + h_gamma).upper_float() + slack
        for combined in (eta + gamma, eta - gamma):
            if combined:
                assert log_height(combined).lower_float() <= (h_eta + h_gamma).upper_float() + log2 + slack
        k = rng.randint(-3, 3)
        assert log_height(eta**k).lower_float() <= abs(k) * h_eta.upper_float() + slack
