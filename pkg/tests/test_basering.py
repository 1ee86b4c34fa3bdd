"""
Tests for polynomial rings, affine automorphisms and fixed subrings
"""

import pytest

from tgwa.algebra.basering import (
    MaxIdealPoint,
    PolyRing,
    RingAut,
    apply_aut,
    aut_order,
    commute_check,
    compose_auts,
    fixed_subring,
    membership,
    point_action,
    power_aut,
    reynolds,
)
from tgwa.algebra.scalars import cyclotomic_field
from tgwa.core.exceptions import (
    RingMismatch,
    SingularAffineMap,
    UnsupportedAutomorphismShape,
    UnsupportedFeature,
)


def test_polynomial_printing(ring_h):
    f = ring_h.parse("(h - 1)*(h + 2)")
    assert str(f) == "h^2 + h - 2"
    assert str(ring_h.parse("-h + 1/2")) == "-h + 1/2"
    assert str(ring_h.zero()) == "0"


def test_evaluate(ring_h, q):
    f = ring_h.parse("h^2 - 1")
    assert f.evaluate((q(3),)) == 8
    assert f.evaluate((q(-1),)).is_zero()


def test_shift_inverse_and_powers(ring_h):
    sigma = RingAut.parse(ring_h, ["h - 1"])
    assert sigma.inverse().images == (ring_h.parse("h + 1"),)
    assert power_aut(sigma, 3).images == (ring_h.parse("h - 3"),)
    assert power_aut(sigma, -2).images == (ring_h.parse("h + 2"),)
    assert apply_aut(sigma, ring_h.parse("h^2")) == ring_h.parse("h^2 - 2*h + 1")


def test_compose_applies_right_factor_first(ring_h):
    a = RingAut.parse(ring_h, ["2*h"])
    b = RingAut.parse(ring_h, ["h + 1"])
    # a(b(h)) = a(h + 1) = 2h + 1
    assert compose_auts(a, b).images == (ring_h.parse("2*h + 1"),)
    assert not commute_check(a, b)


def test_non_affine_images_are_rejected(ring_h):
    with pytest.raises(UnsupportedFeature):
        RingAut.parse(ring_h, ["h^2"])


def test_singular_affine_map(q):
    ring = PolyRing.polynomial(["h1", "h2"], q)
    with pytest.raises(SingularAffineMap):
        RingAut.parse(ring, ["h1 + h2", "h1 + h2"])


def test_point_action_moves_along_the_shift(ring_h, q):
    sigma = RingAut.parse(ring_h, ["h - 1"])
    # sigma(h - p) = h - (p + 1)
    assert point_action(sigma, MaxIdealPoint((q(0),))) == MaxIdealPoint((q(1),))


def test_aut_order(ring_h):
    assert aut_order(RingAut.parse(ring_h, ["-h"]), 8) == 2
    assert aut_order(RingAut.parse(ring_h, ["h - 1"]), 8) is None


def test_univariate_fixed_subring(ring_h):
    phi = RingAut.parse(ring_h, ["-h"])
    fixed = fixed_subring(phi)
    assert fixed.kind == "univariate-scaling"
    assert [str(g) for g in fixed.generators] == ["h^2"]
    assert fixed.pure_powers() == (2,)
    assert membership(fixed, ring_h.parse("h^4 + 3*h^2 + 1"))
    assert not membership(fixed, ring_h.parse("h^3"))


def test_diagonal_fixed_subring():
    f = cyclotomic_field(3)
    ring = PolyRing.polynomial(["h1", "h2"], f)
    phi = RingAut.parse(ring, ["zeta(3)*h1", "zeta(3)^2*h2"])
    fixed = fixed_subring(phi)
    assert fixed.kind == "diagonal-scaling"
    assert fixed.order == 3
    assert {str(g) for g in fixed.generators} == {"h1*h2", "h1^3", "h2^3"}
    assert fixed.pure_powers() is None


def test_identity_fixed_subring(ring_h):
    fixed = fixed_subring(RingAut.identity(ring_h))
    assert fixed.kind == "identity"
    assert membership(fixed, ring_h.parse("h^3 - h"))


def test_reynolds_projects_onto_invariants(ring_h):
    phi = RingAut.parse(ring_h, ["-h"])
    assert reynolds(phi, 2, ring_h.parse("h^2 + h")) == ring_h.parse("h^2")


def test_non_diagonal_phi_is_unsupported(q):
    ring = PolyRing.polynomial(["h1", "h2"], q)
    swap = RingAut.parse(ring, ["h2", "h1"])
    with pytest.raises(UnsupportedAutomorphismShape):
        fixed_subring(swap)


def test_laurent_variables(q):
    ring = PolyRing(("x",), (True,), q)
    x = ring.gen(0)
    assert x * x ** -1 == ring.one()
    plain = PolyRing.polynomial(["h"], q)
    with pytest.raises(UnsupportedFeature):
        plain.gen(0) ** -1


def test_ring_mismatch(ring_h, q):
    other = PolyRing.polynomial(["y"], q)
    with pytest.raises(RingMismatch):
        ring_h.gen(0) + other.gen(0)
