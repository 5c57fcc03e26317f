import random

import pytest

from powersums.errors import DomainError, NonDegeneracyError, UnsupportedInstanceError
from powersums.qfield import QuadElem
from powersums.recurrence import (
    RecurrenceSpec,
    binet_term,
    check_nondegenerate,
    dominance_constants,
    ell_bound,
    iter_terms,
    minimum_term,
    require_analytic,
    require_nondegenerate,
    term,
    terms,
)


def test_balancing_terms(balancing):
    assert terms(balancing, 6) == [0, 1, 6, 35, 204, 1189, 6930]
    assert term(balancing, 10) == 7997214
    assert next(iter_terms(balancing, 3)) == (3, 35)
    with pytest.raises(DomainError):
        term(balancing, -1)


def test_binet_data(balancing):
    assert balancing.alpha == QuadElem(3, 2, 2)
    assert balancing.beta == QuadElem(3, -2, 2)
    assert balancing.a == 1 and balancing.b == 1
    assert balancing.sqrt_delta == QuadElem(0, 4, 2)


def test_binet_matches_recurrence(balancing):
    u = terms(balancing, 200)
    for n in range(201):
        assert binet_term(balancing, n) == u[n]


def test_binet_on_random_recurrences():
    rng = random.Random(7)
    checked = 0
    while checked < 20:
        spec = RecurrenceSpec(rng.randint(-6, 6), rng.randint(-6, 6), rng.randint(-5, 5), rng.randint(-5, 5))
        if not check_nondegenerate(spec).passed:
            continue
        u = terms(spec, 200)
        for n in range(201):
            assert binet_term(spec, n) == u[n]
        checked += 1


def test_nondegenerate_certificate(balancing, fibonacci):
    assert require_nondegenerate(balancing).passed
    assert check_nondegenerate(fibonacci).violations == []


def test_degenerate_recurrences():
    cert = check_nondegenerate(RecurrenceSpec(0, 1, 0, 1))
    assert not cert.passed
    assert "PQ = 0" in cert.violations
    assert any("root of unity" in v for v in cert.violations)

    assert check_nondegenerate(RecurrenceSpec(3, -2, 1, 2)).violations == ["b = 0"]

    negative = check_nondegenerate(RecurrenceSpec(1, -1, 0, 1))
    assert any("not positive" in v for v in negative.violations)

    with pytest.raises(NonDegeneracyError) as info:
        require_nondegenerate(RecurrenceSpec(2, 1, 0, 0))
    assert "|u0| + |u1| = 0" in info.value.violations
    assert info.value.exit_code == 3


def test_require_analytic():
    require_analytic(RecurrenceSpec.balancing())
    with pytest.raises(UnsupportedInstanceError):
        require_analytic(RecurrenceSpec(-6, -1, 0, 1))


def test_dominance_constants(balancing):
    dom = dominance_constants(balancing, 3)
    assert dom.d0_int == 1
    assert dom.d1 == 2
    assert 0.3535 < float(dom.d0) < 0.3536
    assert dominance_constants(RecurrenceSpec(11, -10, 0, 1), 2).d1 == 4
    assert dominance_constants(balancing, 7).d1 == 1


def test_dominance_bounds_terms(balancing, fibonacci):
    for spec in (balancing, fibonacci, RecurrenceSpec(3, 2, 2, -1)):
        dom = dominance_constants(spec, 2)
        power = QuadElem(dom.d0_int)
        for n, value in enumerate(terms(spec, 120)):
            assert abs(QuadElem(value)) <= power
            power = power * abs(spec.alpha)


def test_ell_bound(balancing):
    ell = ell_bound(balancing, 3)
    assert -0.1967 < float(ell) < -0.1965
    assert ell_bound(balancing, 1).to_fractions() == (0, 0)
    assert ell_bound(balancing, 2).certainly_le(0)
    with pytest.raises(DomainError):
        ell_bound(RecurrenceSpec(3, -2, 1, 2), 3)


def test_minimum_term(balancing, fibonacci):
    assert minimum_term(balancing, 1) == 1
    assert minimum_term(balancing, 3) == 35
    assert minimum_term(fibonacci, 1) == 1
    assert minimum_term(RecurrenceSpec(-6, -1, 0, 1), 1) is None
