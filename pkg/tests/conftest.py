"""
Shared fixtures for the TGWA workbench tests
"""

import random
from pathlib import Path

import pytest

from tgwa.algebra.basering import PolyRing
from tgwa.algebra.scalars import cyclotomic_field
from tgwa.cli.library import builtin_scenario
from tgwa.core.config import settings

GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture
def q():
    """The rationals, Q(zeta_1)"""
    return cyclotomic_field(1)


@pytest.fixture
def q12():
    return cyclotomic_field(12)


@pytest.fixture
def ring_h(q):
    return PolyRing.polynomial(["h"], q)


@pytest.fixture
def library():
    """builtin_scenario, for tests that need several built-in scenarios"""
    return builtin_scenario


@pytest.fixture
def weyl():
    return builtin_scenario("weyl")


@pytest.fixture
def a2_simple():
    return builtin_scenario("a2-simple")


@pytest.fixture
def fiber_6_2():
    return builtin_scenario("fiber-6-2")


@pytest.fixture
def infinite_orbit():
    return builtin_scenario("infinite-orbit-breaks")


@pytest.fixture
def finite_orbit():
    return builtin_scenario("finite-orbit")


@pytest.fixture
def rng():
    return random.Random(settings.RANDOM_SEED)


@pytest.fixture
def golden():
    def read(name: str) -> str:
        return (GOLDEN_DIR / name).read_text(encoding="utf-8")

    return read
