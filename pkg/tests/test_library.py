"""
Tests for the built-in scenario library
"""

import pytest

from tgwa.cli.library import (
    builtin_scenario,
    describe_library,
    load_scenario,
    natural_conductor,
    scenario_document,
    scenario_names,
)
from tgwa.cli.verification import expectation_checks
from tgwa.core.config import settings
from tgwa.core.exceptions import InputError
from tgwa.weyl.datum import validate_datum

NAMES = [
    "weyl",
    "quantized-weyl",
    "a2-simple",
    "a2-family",
    "sergeev",
    "mazorchuk-turowska",
    "mu-q-family",
    "kleinian-fiber",
    "fiber-6-2",
    "finite-orbit",
    "infinite-orbit-breaks",
]


def test_library_names():
    assert scenario_names() == NAMES
    descriptions = describe_library()
    assert list(descriptions) == NAMES
    assert all(descriptions.values())


@pytest.mark.parametrize("name", NAMES)
def test_builtin_scenarios_are_consistent(name):
    scenario = builtin_scenario(name)
    assert scenario.name == name
    assert validate_datum(scenario.datum).overall


@pytest.mark.parametrize("name", NAMES)
def test_builtin_expectations_hold(name):
    checks = expectation_checks(builtin_scenario(name), settings.DEFAULT_BOUND)
    assert checks
    assert all(checks.values()), checks


def test_overrides_drop_expectations():
    doc = scenario_document("weyl", {"alpha": "zeta(3)"})
    assert "expect" not in doc
    assert doc["phi"] == {"alpha": ["zeta(3)"]}
    assert "expect" in scenario_document("weyl")


@pytest.mark.parametrize("key", ["nope", "expect", "description"])
def test_unknown_override_keys(key):
    with pytest.raises(InputError):
        scenario_document("weyl", {key: "1"})


def test_unknown_scenario():
    with pytest.raises(InputError):
        load_scenario("no-such-scenario")


def test_natural_conductor():
    assert natural_conductor("weyl") == 1
    assert natural_conductor("quantized-weyl") == 12
    assert natural_conductor("fiber-6-2") == 3
    assert natural_conductor("weyl", {"alpha": "zeta(5)"}) == 5
