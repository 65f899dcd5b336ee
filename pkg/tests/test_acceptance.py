"""The thirteen acceptance criteria, each checked exactly.

Run ``pytest tests/test_acceptance.py -s`` (or ``python tests/test_acceptance.py``)
to see one PASS/FAIL line per criterion.
"""
from __future__ import annotations

import sys

import pytest

from monosplit.verify import CRITERIA, run_criterion


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"{c.number:02d}_{c.name}" for c in CRITERIA])
def test_criterion(criterion):
    result = run_criterion(criterion, seed=0)
    mark = "PASS" if result["passed"] else "FAIL"
    print(f"\n[{mark}] criterion {criterion.number:2d} {criterion.name}: {result['detail']}")
    assert result["passed"], result["detail"]


def main() -> int:
    failed = 0
    for c in CRITERIA:
        r = run_criterion(c, seed=0)
        failed += not r["passed"]
        print(f"[{'PASS' if r['passed'] else 'FAIL'}] criterion {c.number:2d} {c.name}: {r['detail']}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
