"""
Tests for normal forms in TGWAs of type (A1)^n
"""

from itertools import product

import pytest

from tgwa.algebra.basering import RingAut
from tgwa.core.exceptions import ExpressionSyntaxError, NotTypeA1n, ProfileMismatch
from tgwa.weyl.a1n import (
    from_datum,
    letter_str,
    monomial_str,
    multiply,
    normal_form,
    ore_presentation,
    parse_word,
    phi_action,
)
from tgwa.weyl.fixedring import norm_element


@pytest.fixture
def weyl_profile(weyl):
    return from_datum(weyl.datum)


@pytest.fixture
def quantized(library):
    return from_datum(library("quantized-weyl").datum)


def test_weyl_relations(weyl_profile):
    h = weyl_profile.ring.gen(0)
    x, y = weyl_profile.generator(0, 1), weyl_profile.generator(0, -1)
    assert y * x == weyl_profile.scalar(h)
    assert x * y == weyl_profile.scalar(h - 1)
    # x h = (h - 1) x
    assert x * h == weyl_profile.monomial((1,), h - 1)


def test_normal_form_of_a_word(weyl, weyl_profile):
    tokens = parse_word("X+ h", 1, weyl.polynomial)
    assert str(normal_form(weyl_profile, tokens)) == "(h - 1)*X1+"
    tokens = parse_word("X- X+", 1, weyl.polynomial)
    assert str(normal_form(weyl_profile, tokens)) == "h"


def test_printing():
    assert letter_str((1, -1)) == "X2-"
    assert monomial_str((2, -1)) == "X2-*X1+^2"
    assert monomial_str((0, 0)) == ""


def test_products_agree_with_rewriting(quantized):
    letters = [(i, s) for i in range(quantized.n) for s in (1, -1)]
    for word in product(letters, repeat=3):
        expected = normal_form(quantized, list(word))
        value = quantized.one()
        for letter in word:
            value = value * quantized.generator(*letter)
        assert value == expected, word


def test_multiplication_is_associative(quantized):
    ring = quantized.ring
    h1, h2 = ring.gens()
    a = quantized.monomial((1, -1), h1 + 2)
    b = quantized.monomial((-2, 1), h2) + quantized.monomial((0, 1), ring.constant(3))
    c = quantized.monomial((1, 1), h1 - h2)
    assert (a * b) * c == a * (b * c)


def test_power_relations(weyl_profile):
    d = weyl_profile.datum
    x, y = weyl_profile.generator(0, 1), weyl_profile.generator(0, -1)
    for m in range(1, 5):
        s = norm_element(d.sigma[0], d.t[0], m)
        assert y ** m * x ** m == weyl_profile.scalar(s)
    # h (h + 1) (h + 2)
    assert norm_element(d.sigma[0], d.t[0], 3) == d.ring.parse("h^3 + 3*h^2 + 2*h")


def test_a2_datum_is_not_a1n(a2_simple):
    with pytest.raises(NotTypeA1n):
        from_datum(a2_simple.datum)


def test_elements_of_different_algebras(weyl):
    a, b = from_datum(weyl.datum), from_datum(weyl.datum)
    with pytest.raises(ProfileMismatch):
        multiply(a.generator(0, 1), b.generator(0, 1))


@pytest.mark.parametrize("text, column", [("X1+ X3+", 5), ("X+ X2-", 1)])
def test_parse_word_rejects_unknown_generators(quantized, text, column):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_word(text, quantized.n, quantized.ring.parse)
    assert info.value.column == column


def test_ore_presentation(weyl_profile, quantized):
    for profile in (weyl_profile, quantized):
        presentation = ore_presentation(profile)
        assert presentation.verified
        assert presentation.as_dict()["verified"] is True


def test_ore_minus_twist_uses_mu_ji(quantized):
    mu = quantized.datum.mu
    assert mu[1][0] != mu[0][1]
    x1m, x2p = quantized.generator(0, -1), quantized.generator(1, 1)
    step = ore_presentation(quantized).minus_steps[0]
    assert step.theta["X2+"] == x2p * quantized.scalar(mu[1][0].inverse())
    assert x1m * x2p == step.theta["X2+"] * x1m
    assert x1m * x2p != x2p * quantized.scalar(mu[0][1].inverse()) * x1m


def test_phi_action(weyl, weyl_profile):
    ring = weyl_profile.ring
    phi_r = RingAut.identity(ring)
    x = weyl_profile.monomial((1,), ring.gen(0))
    image = phi_action(x, weyl.phi.alpha, phi_r)
    assert image == -x
    y2 = weyl_profile.generator(0, -1) ** 2
    assert phi_action(y2, weyl.phi.alpha, phi_r) == y2
