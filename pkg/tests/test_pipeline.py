import pytest

from powersums.errors import ConfigError, NonDegeneracyError, ResourceGuardError
from powersums.pipeline import ProblemInstance, brute_force, handle_degenerate, is_power_of, solve
from powersums.recurrence import RecurrenceSpec
from powersums.types import Anchor, Solution

FLAGSHIP = [Solution((1, 1, 1), 1), Solution((1, 0, 0), 0)]


def test_problem_instance_validation(balancing):
    with pytest.raises(ConfigError):
        ProblemInstance(balancing, 4, 3)
    with pytest.raises(ConfigError):
        ProblemInstance(balancing, 3, 1)
    with pytest.raises(ConfigError):
        ProblemInstance(balancing, 3, 6)
    with pytest.raises(ConfigError):
        ProblemInstance(balancing, 3, 3, brute_limit=-1)


def test_is_power_of():
    assert is_power_of(1, 3) == 0
    assert is_power_of(243, 3) == 5
    assert is_power_of(36, 3) is None
    assert is_power_of(0, 3) is None
    assert is_power_of(-3, 3) is None


def test_brute_force_flagship(balancing):
    instance = ProblemInstance(balancing, 3, 3)
    assert brute_force(instance, 100) == FLAGSHIP
    assert brute_force(instance, 100, min_index=2) == []
    assert brute_force(instance, 0) == []


def test_brute_force_guard(balancing):
    with pytest.raises(ResourceGuardError):
        brute_force(ProblemInstance(balancing, 3, 3), 501)
    with pytest.raises(ResourceGuardError):
        brute_force(ProblemInstance(balancing, 3, 4), 10)
    assert brute_force(ProblemInstance(balancing, 3, 4), 10, allow_large=True)


def test_fibonacci_two_terms_small_window(fibonacci):
    found = brute_force(ProblemInstance(fibonacci, 2, 2), 12)
    assert Solution((3, 3), 2) in found
    assert Solution((6, 0), 3) in found
    assert all(s.indices[0] >= s.indices[1] for s in found)


def test_handle_degenerate(balancing):
    cases = {c.kind: c for c in handle_degenerate(ProblemInstance(balancing, 3, 3), 50)}
    assert cases["all-equal"].solutions == [Solution((1, 1, 1), 1)]
    assert cases["trailing-zero"].reduced_t == 2
    assert "single-term" not in cases

    pair = {c.kind: c for c in handle_degenerate(ProblemInstance(balancing, 3, 2), 50)}
    assert pair["single-term"].solutions == [Solution((1, 0), 0)]

    shifted = {c.kind: c for c in handle_degenerate(ProblemInstance(RecurrenceSpec(6, -1, 1, 3), 3, 3), 20)}
    assert "zero-index-kept" in shifted
    assert "trailing-zero" not in shifted


@pytest.mark.slow
def test_flagship_solutions(flagship_result):
    assert flagship_result.solutions == FLAGSHIP
    assert [s.as_list() for s in flagship_result.solutions] == [[1, 1, 1, 1], [1, 0, 0, 0]]
    bounds = [s.bound for s in flagship_result.trace.stages]
    assert bounds[0] <= 100 and bounds[1] <= 110 and bounds[2] <= 120
    assert flagship_result.search_limit >= 100
    assert flagship_result.subproblems[0].t == 2
    ledger = {entry.name: entry for entry in flagship_result.certificate.ledger}
    assert ledger["search_limit"].value == str(flagship_result.search_limit)
    assert ledger["search_limit"].anchor == Anchor.SEARCH_WINDOW.value


@pytest.mark.slow
def test_flagship_matches_wide_search(flagship_result, balancing):
    assert brute_force(ProblemInstance(balancing, 3, 3), 500) == flagship_result.solutions


@pytest.mark.slow
def test_two_terms(balancing):
    result = solve(ProblemInstance(balancing, 3, 2))
    assert [s.as_list() for s in result.solutions] == [[1, 0, 0]]


@pytest.mark.slow
def test_fibonacci_against_search(fibonacci):
    instance = ProblemInstance(fibonacci, 2, 2)
    result = solve(instance)
    assert result.search_limit <= 300
    assert result.solutions == brute_force(instance, 300)


def test_solve_rejects_degenerate():
    with pytest.raises(NonDegeneracyError):
        solve(ProblemInstance(RecurrenceSpec(0, 1, 0, 1), 3, 3))
