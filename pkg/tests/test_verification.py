"""
Tests for the randomized verification suites
"""

import pytest

from tgwa.cli.verification import SUITES, run_suites

ALGEBRA_SUITES = ["consistency", "cartan", "a1n", "fixed-ring", "fiber", "weight-modules"]


def test_algebra_suites_pass_with_the_default_seed():
    results = run_suites(ALGEBRA_SUITES)
    assert list(results) == ALGEBRA_SUITES
    for name, result in results.items():
        assert result.checks, name
        failed = [c.name for c in result.checks if not c.passed]
        assert not failed, (name, result.as_dict())


def test_unknown_suite_is_rejected():
    assert "no-such-suite" not in SUITES
    with pytest.raises(ValueError):
        run_suites(["no-such-suite"])
