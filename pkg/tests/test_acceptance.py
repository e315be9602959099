"""The ten acceptance criteria, each run in full against its time limit.

Every test prints one PASS/FAIL line, visible with ``pytest -s`` or in the
captured output of ``pytest -v``.
"""
import pytest

from relcat.suites import CRITERIA, TIME_LIMITS


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    result = CRITERIA[number]()
    limit = TIME_LIMITS[number]
    with capsys.disabled():
        print("\n" + result.line(limit))
    assert result.ok, result.failures[:3]
    assert result.elapsed < limit
