"""
Tests for TGW data: consistency, Cartan type and tensor products
"""

from dataclasses import replace

import pytest

from tgwa.algebra.basering import PolyRing, RingAut
from tgwa.core.exceptions import NonCommutingSigmas, ZeroT
from tgwa.weyl.datum import TGWDatum, cartan_type, orbit_minpoly, tensor_data, validate_datum


def _rank2(ring, sigmas, ts):
    one = ring.field.one
    return TGWDatum(
        ring,
        tuple(RingAut.parse(ring, s) for s in sigmas),
        tuple(ring.parse(t) for t in ts),
        ((one, one), (one, one)),
    )


def test_weyl_is_consistent_of_type_a1n(weyl):
    report = validate_datum(weyl.datum)
    assert report.overall
    cartan = cartan_type(weyl.datum)
    assert cartan.type_tag == "A1n"
    assert cartan.cartan == [[2]]


def test_a2_simple(a2_simple):
    assert validate_datum(a2_simple.datum).overall
    cartan = cartan_type(a2_simple.datum)
    assert cartan.type_tag == "A2"
    assert cartan.cartan == [[2, -1], [-1, 2]]
    assert cartan.minpoly_str((0, 1)) == "x^2 - 2*x + 1"
    assert cartan.as_dict()["dim_V"] == {"1,2": 2, "2,1": 2}


@pytest.mark.parametrize("name", ["a2-family", "mu-q-family", "sergeev", "mazorchuk-turowska"])
def test_rank_two_presets_are_a2(library, name):
    scenario = library(name)
    assert validate_datum(scenario.datum).overall
    assert cartan_type(scenario.datum).type_tag == "A2"


def test_kleinian_fiber_is_not_symmetric(library):
    cartan = cartan_type(library("kleinian-fiber").datum)
    assert cartan.type_tag == "other"
    assert cartan.cartan == [[2, -1], [-2, 2]]


def test_small_bound_gives_unknown_type(a2_simple):
    cartan = cartan_type(a2_simple.datum, bound=1)
    assert cartan.type_tag == "unknown"
    assert cartan.cartan is None
    assert cartan.vdims[(0, 1)] is None


def test_orbit_minpoly_of_a_shift(ring_h):
    sigma = RingAut.parse(ring_h, ["h - 1"])
    # span{h, h - 1} is closed, (x - 1)^2 annihilates it
    coeffs = orbit_minpoly(sigma, ring_h.parse("h"), 4)
    assert [str(c) for c in coeffs] == ["1", "-2", "1"]


def test_tensor_product_is_block_diagonal(weyl):
    product = tensor_data(weyl.datum, weyl.datum)
    assert product.ring.names == ("h1", "h2")
    assert validate_datum(product).overall
    cartan = cartan_type(product)
    assert cartan.type_tag == "A1n"
    assert cartan.cartan == [[2, 0], [0, 2]]


def test_non_commuting_sigmas(ring_h):
    datum = _rank2(ring_h, [["h + 1"], ["2*h"]], ["h", "h"])
    with pytest.raises(NonCommutingSigmas):
        validate_datum(datum)


def test_zero_t(ring_h):
    datum = _rank2(ring_h, [["h + 1"], ["h - 1"]], ["h", "0"])
    with pytest.raises(ZeroT):
        validate_datum(datum)


def test_corrupted_mu_breaks_the_first_consistency_equation(library):
    datum = library("a2-family").datum
    field = datum.field
    mu = ((field.one, field(5)), (datum.mu[1][0], field.one))
    report = validate_datum(replace(datum, mu=mu))
    assert not report.cons1_ok
    assert not report.overall
    assert report.as_dict()["cons1"]["1,2"] is False


def test_zero_mu_is_reported(ring_h):
    field = ring_h.field
    datum = _rank2(ring_h, [["h + 1"], ["h - 1"]], ["h", "h + 1"])
    datum = replace(datum, mu=((field.one, field.zero), (field.one, field.one)))
    assert not validate_datum(datum).mu_nonzero


def test_sigma_power(ring_h):
    datum = _rank2(ring_h, [["h + 1"], ["h - 1"]], ["h", "h + 1"])
    assert datum.sigma_power((3, 1)).images == (ring_h.parse("h + 2"),)


def test_rank_mismatch_is_rejected(q):
    ring = PolyRing.polynomial(["h"], q)
    with pytest.raises(ValueError):
        TGWDatum(ring, (RingAut.identity(ring),), (), ((q.one,),))
