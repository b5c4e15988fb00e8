"""Acceptance gate: every criterion at its stated tolerance, one line each.

Also runnable directly: ``python tests/test_acceptance.py``.
"""

import sys

import pytest

from ergmlab.verify import CHECKS

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script from elsewhere
    ACCEPTANCE_LINES = []

CRITERIA = [
    ("digits", 60),
    ("two-vertex", 60),
    ("snub", 60),
    ("parsimony", 300),
    ("forward-map", 60),
    ("gap", 60),
    ("matching-digits", 60),
    ("replacement", 120),
    ("sampler", 120),
    ("dichotomy", 60),
]


@pytest.mark.parametrize("key, budget", CRITERIA, ids=[k for k, _ in CRITERIA])
def test_criterion(key, budget):
    result = CHECKS[key]()
    line = result.line()
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert result.passed, result.detail
    assert result.seconds < budget, f"{key} took {result.seconds:.1f}s, budget {budget}s"


def test_every_check_is_gated():
    assert sorted(CHECKS) == sorted(k for k, _ in CRITERIA)


if __name__ == "__main__":
    failed = 0
    for key, _ in CRITERIA:
        r = CHECKS[key]()
        print(r.line())
        failed += not r.passed
    sys.exit(1 if failed else 0)
