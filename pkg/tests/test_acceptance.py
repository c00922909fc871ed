"""Acceptance criteria, one test per criterion; each prints a PASS/FAIL line."""

import pytest

from gapshift import checks


@pytest.mark.slow
@pytest.mark.parametrize("fn", checks.CHECKS, ids=[f"criterion_{i}" for i in range(1, 12)])
def test_criterion(fn, capsys):
    res = checks.run_check(fn)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.detail
