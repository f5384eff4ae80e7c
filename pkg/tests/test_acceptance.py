"""Acceptance gate: every criterion must pass at its stated tolerance.

Each case prints one pass/fail line; ``regsweep acceptance`` drives the
same registry from the command line.
"""

import pytest

from regsweep.harness.acceptance import CRITERIA


@pytest.mark.parametrize("number,name,fn", CRITERIA, ids=[f"{n:02d}-{name}" for n, name, _ in CRITERIA])
def test_criterion(number, name, fn, capsys):
    passed, detail = fn()
    with capsys.disabled():
        print(f"\n[{'PASS' if passed else 'FAIL'}] criterion {number} {name}: {detail}")
    assert passed, f"criterion {number} ({name}): {detail}"
