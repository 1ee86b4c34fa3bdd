"""
Tests for univariate rational functions
"""

import pytest

from tgwa.algebra.basering import PolyRing
from tgwa.algebra.rational import RationalFunction, cancel, parse_rational
from tgwa.core.exceptions import DivisionByZeroPolynomial, RingMismatch


def test_common_factors_cancel(ring_h):
    f = RationalFunction(ring_h.parse("h^2 - 1"), ring_h.parse("h - 1"))
    assert f.is_polynomial()
    assert str(f) == "h + 1"


def test_denominator_is_made_monic(ring_h):
    f = RationalFunction(ring_h.parse("2*h + 2"), ring_h.parse("4*h"))
    assert f.den == ring_h.parse("h")
    assert f.num == ring_h.parse("1/2*h + 1/2")


def test_cancel_returns_lowest_terms(ring_h):
    num, den = cancel(ring_h.parse("3*h^3 - 3*h"), ring_h.parse("6*h^2 + 6*h"))
    assert num == ring_h.parse("1/2*h - 1/2")
    assert den == ring_h.one()


def test_cyclotomic_coefficients_cancel(q12):
    ring = PolyRing.polynomial(["h"], q12)
    z = q12.zeta()
    linear = ring.gens()[0] - z
    f = RationalFunction(linear * ring.parse("h + 1"), linear.scale(z))
    assert f == RationalFunction(ring.parse("h + 1").scale(z.inverse()))


def test_arithmetic_stays_reduced(ring_h):
    f = parse_rational(ring_h, "1/(h - 1) - 1/h")
    assert f.num == ring_h.one()
    assert f.den == ring_h.parse("h^2 - h")
    assert (f * ring_h.parse("h^2 - h")).is_polynomial()


def test_division_by_zero(ring_h):
    with pytest.raises(DivisionByZeroPolynomial):
        RationalFunction(ring_h.one(), ring_h.zero())
    with pytest.raises(DivisionByZeroPolynomial):
        RationalFunction(ring_h.parse("h")) / 0


def test_multivariate_rings_are_rejected(q):
    ring = PolyRing.polynomial(["x", "y"], q)
    with pytest.raises(RingMismatch):
        RationalFunction(ring.one())
