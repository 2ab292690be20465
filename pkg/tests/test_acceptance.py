"""The acceptance criteria, one test per criterion; each prints its pass/fail line."""
import pytest

from daggeralg.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", range(1, len(CRITERIA) + 1))
def test_criterion(number):
    result = run_criterion(number)
    print(result.line())
    assert result.passed, result.detail
