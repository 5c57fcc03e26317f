import pytest

from powersums.pipeline import ProblemInstance, solve
from powersums.recurrence import RecurrenceSpec


@pytest.fixture
def balancing():
    return RecurrenceSpec.balancing()


@pytest.fixture
def fibonacci():
    return RecurrenceSpec.fibonacci()


@pytest.fixture(scope="session")
def flagship_result():
    """Balancing numbers, p = 3, three terms"""
    return solve(ProblemInstance(RecurrenceSpec.balancing(), 3, 3))
