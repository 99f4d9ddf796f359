"""Acceptance suite: one pass/fail line per criterion, also listed in the terminal summary."""

import pytest

from weylcone.acceptance import CRITERIA


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, acceptance_log):
    result = CRITERIA[number]()
    print(result.line())
    acceptance_log.append(result.line())
    assert result.passed, result.line()
