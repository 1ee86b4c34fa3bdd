"""
Tests for fixed rings of diagonal automorphisms
"""

import pytest

from tgwa.cli.library import builtin_scenario
from tgwa.core.exceptions import CoprimalityViolation, HypothesisViolation
from tgwa.weyl.fixedring import (
    diagonal_aut,
    fixed_datum,
    identity_aut,
    norm_element,
    tensor_invariants,
    validate_hypothesis,
    verify_fixed_type,
)


def test_weyl_fixed_datum(weyl):
    result = fixed_datum(weyl.datum, weyl.phi)
    ring = weyl.datum.ring
    assert result.datum.sigma[0].images == (ring.parse("h - 2"),)
    assert str(result.datum.t[0]) == "h^2 + h"
    assert result.consistency.overall
    assert result.cartan.type_tag == "A1n"
    assert result.label == "A^phi"
    assert result.fixed_subring.kind == "identity"
    assert weyl.phi.algebra_order == 2


def test_norm_element_of_a_shift(weyl):
    d = weyl.datum
    assert norm_element(d.sigma[0], d.t[0], 1) == d.t[0]
    assert str(norm_element(d.sigma[0], d.t[0], 2)) == "h^2 + h"


def test_hypothesis_report(weyl):
    report = validate_hypothesis(weyl.datum, weyl.phi)
    assert report.passed
    assert report.as_dict()["orders"] == [2]


def test_infinite_order_alpha_violates_the_hypothesis():
    scenario = builtin_scenario("weyl", {"alpha": "2"})
    assert not validate_hypothesis(scenario.datum, scenario.phi).conditions["orders_finite"]
    with pytest.raises(HypothesisViolation):
        fixed_datum(scenario.datum, scenario.phi)


def test_alpha_of_the_wrong_rank(weyl):
    field = weyl.field
    with pytest.raises(HypothesisViolation):
        validate_hypothesis(weyl.datum, identity_aut(weyl.datum, [field(-1), field(-1)]))


def test_gamma_powers_on_quantized_weyl():
    scenario = builtin_scenario("quantized-weyl", {"alpha": '["-1", "zeta(3)", "1"]'})
    assert scenario.phi.orders == (2, 3)
    report = verify_fixed_type(scenario.datum, scenario.phi)
    assert report.checks["type_A1n"]
    assert report.checks["gamma_powers"]


def test_tensor_invariants_with_coprime_orders():
    two = builtin_scenario("weyl", {"alpha": "-1"}, conductor=6)
    three = builtin_scenario("weyl", {"alpha": "zeta(3)"}, conductor=6)
    result = tensor_invariants([(two.datum, two.phi), (three.datum, three.phi)])
    assert result.datum.n == 2
    assert result.consistency.overall


def test_tensor_invariants_need_coprime_orders():
    two = builtin_scenario("weyl", {"alpha": "-1"})
    with pytest.raises(CoprimalityViolation):
        tensor_invariants([(two.datum, two.phi), (two.datum, two.phi)])


def test_finite_orbit_fixed_subring(finite_orbit):
    result = fixed_datum(finite_orbit.datum, finite_orbit.phi)
    assert [str(g) for g in result.fixed_subring.generators] == ["h^2"]
    presented = result.presented
    assert presented.ring.names == ("u",)
    assert presented.sigma[0].images == (presented.ring.parse("-u"),)
    assert str(presented.t[0]) == "u - 1"


def test_a2_family_fixed_datum_is_regular(library):
    family = library("a2-family")
    result = fixed_datum(family.datum, family.phi)
    assert result.consistency.regular
    assert result.consistency.cons1_ok


def test_diagonal_aut_orders(weyl):
    field = weyl.field
    a = diagonal_aut([field(2)], weyl.phi.phi_r)
    assert a.orders == (None,)
    assert a.algebra_order is None


def test_fixing_twice_with_coprime_orders_matches_fixing_once():
    # alpha = -1, then zeta(3) on the result, against zeta(6) in one step
    first = builtin_scenario("weyl", {"alpha": "-1"}, conductor=6)
    once = builtin_scenario("weyl", {"alpha": "zeta(6)"}, conductor=6)
    halfway = fixed_datum(first.datum, first.phi).datum
    field = halfway.field
    twice = fixed_datum(halfway, identity_aut(halfway, [field.root_of_unity(3)])).datum
    direct = fixed_datum(once.datum, once.phi).datum

    ring = direct.ring
    assert twice.ring == ring
    assert twice.sigma[0].images == direct.sigma[0].images == (ring.parse("h - 6"),)
    assert twice.t == direct.t
    assert str(direct.t[0]) == "h^6 + 15*h^5 + 85*h^4 + 225*h^3 + 274*h^2 + 120*h"
    assert twice.mu == direct.mu
