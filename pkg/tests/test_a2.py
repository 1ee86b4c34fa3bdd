"""
Tests for S-polynomials and the rank 2 fiber algebra
"""

import pytest

from tgwa.algebra.rational import RationalFunction
from tgwa.algebra.scalars import cyclotomic_field
from tgwa.core.exceptions import DenominatorVanishes, RingMismatch, UnsupportedFeature, ZeroLambda2
from tgwa.weyl.a2 import (
    a2_profile,
    a2_relations,
    c_power,
    c_power_closed,
    centralizes,
    centralizing_element,
    chebyshev_check,
    down_up_check,
    fiber_profile,
    restrict_fiber,
    rewrite_coeffs,
    rewrite_identity_holds,
    s_identity_check,
    s_nonvanishing,
    s_poly,
    s_poly_closed,
    serre_relations,
    spanning_monomials,
)


@pytest.fixture
def fiber(fiber_6_2):
    return fiber_profile(fiber_6_2.datum)


def test_s_poly_at_q_2_beta_1(q):
    # S_a(2, 1) = a + 1
    assert [s_poly(a, q(2), q(1)) for a in range(6)] == [1, 2, 3, 4, 5, 6]
    assert s_poly_closed(5, q(2), q(1)) == 6


def test_recurrence_matches_closed_form(q12):
    q, beta = q12.zeta(1) + 2, q12.zeta(5) - 1
    for a in range(12):
        assert s_poly(a, q, beta) == s_poly_closed(a, q, beta)


def test_product_identity(q):
    for a in range(1, 6):
        for c in range(2, 6):
            assert s_identity_check(a, c, q(3), q(-2))


def test_chebyshev_relation(q):
    for a in range(6):
        assert chebyshev_check(a, q(2), q(1))
        assert chebyshev_check(a, q(5), q(4))


def test_nonvanishing_verdicts(q):
    zero = s_nonvanishing(q(0), q(-1), 50)
    assert zero.kind == "ZeroAt"
    assert zero.a % 2 == 1
    assert str(s_nonvanishing(q(-3), q(2), 50)) == "ProvenAllNonzero"
    # complex roots, lambda_1^2 < 4 lambda_2, no zero for small a
    assert s_nonvanishing(q(-1), q(1), 1).kind == "NonzeroUpTo"
    with pytest.raises(ZeroLambda2):
        s_nonvanishing(q(1), q(0), 10)


def test_rewrite_coefficients(q):
    c1, c2 = rewrite_coeffs(1, 1, q(2), q(1))
    # S_0 / S_1 and beta S_0 / S_1
    assert c1 == q(1) / 2
    assert c2 == q(1) / 2
    with pytest.raises(DenominatorVanishes) as info:
        rewrite_coeffs(1, 1, q(0), q(1))
    assert info.value.index == 1


def test_fiber_products(fiber):
    x1p, x1m = fiber.generator(0, 1), fiber.generator(0, -1)
    assert str(x1p * x1m) == "(h - 1)"
    assert str(x1m * x1p) == "(h)"
    assert fiber.parse("X1+ X1-") == x1p * x1m


def test_centralizing_element(fiber):
    ring = fiber.ring
    h = ring.gen(0)
    x1, x2 = fiber.generator(0, 1), fiber.generator(1, 1)
    c = centralizing_element(fiber)
    assert c == x1 * x2 * RationalFunction(ring.one(), h - 1)
    assert c == x2 * x1 * RationalFunction(ring.one(), h)
    assert str(c) == "X2+*X1+*(1/(h))"
    assert centralizes(fiber, c)


def test_c_powers(fiber):
    for k in range(1, 4):
        result = c_power(fiber, k)
        assert result.power == c_power_closed(fiber, k)
    fixed = c_power(fiber, 3, m=3)
    assert fixed.fixed_element == centralizing_element(fiber) ** 3
    assert "C^phi" in fixed.as_dict()
    with pytest.raises(ValueError):
        c_power(fiber, 0)


def test_restricted_fiber_parameter():
    field = cyclotomic_field(3)
    assert restrict_fiber(field.zeta(), 3) == 1


def test_cubic_relations_vanish(fiber, fiber_6_2):
    assert all(r.is_zero() for r in serre_relations(fiber).values())
    relations = a2_relations(fiber, a2_profile(fiber_6_2.datum))
    assert sorted(relations) == ["X1+X1+X2+", "X1-X2-X2-", "X2+X2+X1+", "X2-X1-X1-"]
    assert all(r.is_zero() for r in relations.values())


def test_rewrite_identity(fiber, fiber_6_2):
    field = fiber_6_2.field
    for a in range(1, 4):
        for c in range(1, 4):
            assert rewrite_identity_holds(fiber, a, c, field(2), field(1))


def test_down_up_and_spanning(a2_simple):
    simple = fiber_profile(a2_simple.datum)
    assert all(down_up_check(simple).values())
    report = spanning_monomials(simple, 2)
    assert report.all_nonzero
    assert report.covered


def test_fiber_algebras_need_rank_two_over_k_h(weyl, library):
    with pytest.raises(UnsupportedFeature):
        fiber_profile(weyl.datum)
    with pytest.raises(RingMismatch):
        fiber_profile(library("sergeev").datum)


def test_a2_profile_rejects_other_types(weyl):
    with pytest.raises(UnsupportedFeature):
        a2_profile(weyl.datum)
