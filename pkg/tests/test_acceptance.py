"""Every acceptance criterion at its stated tolerance and time budget.

Run with ``pytest -s tests/test_acceptance.py`` to see one PASS/FAIL line per criterion.
"""

import pytest

from polarnets.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion{c[0]}" for c in CRITERIA])
def test_criterion(number):
    res = run_criterion(number, seed=0)
    within = res.elapsed < res.budget
    status = "PASS" if res.passed and within else "FAIL"
    print(f"\n{status} [{res.number}] {res.title} ({res.elapsed:.2f} s / {res.budget:g} s)")
    for c in res.checks:
        print(f"    [{'PASS' if c.passed else 'FAIL'}] {c.name}" + (f": {c.detail}" if c.detail and not c.passed else ""))
    assert res.passed, [c for c in res.checks if not c.passed]
    assert within, f"took {res.elapsed:.2f} s, budget {res.budget} s"
