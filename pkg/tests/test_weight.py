"""
Tests for weight modules, their restrictions and explicit modules
"""

from dataclasses import replace

import pytest

from tgwa.algebra.basering import MaxIdealPoint
from tgwa.cli.verification import INFINITE_ORBIT_TABLE, explicit_restriction
from tgwa.core.exceptions import (
    FiniteOrbitUnsupported,
    PositionOutsideSupport,
    RelationViolated,
    SpinInconclusive,
    UnsupportedResidueComputation,
)
from tgwa.modules.weight import (
    ExplicitModule,
    breaks,
    check_simple_relations,
    hom_dimension,
    is_simple,
    module_action,
    norm_breaks,
    orbit_of,
    projection_injective,
    render_orbit,
    residue_degree,
    restrict_rank1,
    simple_supports,
    verify_explicit_module,
    weight_space_accounting,
)
from tgwa.weyl.fixedring import fixed_datum, norm_element

WINDOW = 12


@pytest.fixture
def orbit(infinite_orbit):
    return orbit_of(infinite_orbit.datum, infinite_orbit.orbits[0].base, WINDOW)


def test_breaks_and_supports(infinite_orbit, orbit):
    d = infinite_orbit.datum
    assert orbit.kind == "infinite"
    assert breaks(d, orbit, WINDOW).as_list() == [0, 2]
    supports = simple_supports(d, orbit, WINDOW)
    assert [str(s) for s in supports] == ["(-inf, 0]", "(0, 2]", "(2, +inf)"]
    assert 2 in supports[1] and 0 not in supports[1]


def test_simple_module_relations(infinite_orbit, orbit):
    d = infinite_orbit.datum
    for support in simple_supports(d, orbit, WINDOW):
        assert all(check_simple_relations(d, orbit, support, WINDOW).values())


def test_module_action(infinite_orbit, orbit):
    d = infinite_orbit.datum
    middle = simple_supports(d, orbit, WINDOW)[1]
    up = module_action(d, orbit, middle, 1, 1)
    assert up.target == 2 and up.coefficient == 1
    # X- v_2 = t(1) v_1 = -1 v_1
    down = module_action(d, orbit, middle, 2, -1)
    assert down.target == 1 and down.coefficient == -1
    assert module_action(d, orbit, middle, 2, 1).target is None
    with pytest.raises(PositionOutsideSupport):
        module_action(d, orbit, middle, 5, 1)


def test_restriction_table(infinite_orbit, orbit):
    d, phi = infinite_orbit.datum, infinite_orbit.phi
    for support in simple_supports(d, orbit, WINDOW):
        restriction = restrict_rank1(d, phi, orbit, support, WINDOW)
        assert restriction.m == 3
        intervals = [c.as_dict()["interval"] for c in restriction.components]
        assert intervals == INFINITE_ORBIT_TABLE[str(support)]
        assert all(c.multiplicity == 1 for c in restriction.components)


def test_middle_support_misses_residue_zero(infinite_orbit, orbit):
    d, phi = infinite_orbit.datum, infinite_orbit.phi
    middle = simple_supports(d, orbit, WINDOW)[1]
    restriction = restrict_rank1(d, phi, orbit, middle, WINDOW)
    assert restriction.components[0].empty
    assert restriction.s_breaks.as_list() == [-2, -1, 0, 1, 2]


def test_projection_and_accounting(infinite_orbit, orbit):
    fixed = fixed_datum(infinite_orbit.datum, infinite_orbit.phi).fixed_subring
    assert projection_injective(fixed, orbit, WINDOW)
    points = [orbit.point(k) for k in orbit.positions(WINDOW)]
    accounting = weight_space_accounting(points, infinite_orbit.phi.phi_r, fixed)
    assert all(dim == total for dim, total in accounting.values())


def test_finite_orbit(finite_orbit):
    d = finite_orbit.datum
    orbit = orbit_of(d, MaxIdealPoint((finite_orbit.field(2),)), WINDOW)
    assert orbit.kind == "finite(4)"
    assert orbit.point(1) == MaxIdealPoint((finite_orbit.scalar("-2*zeta(4)"),))
    assert orbit.point(4) == orbit.point(0)
    with pytest.raises(FiniteOrbitUnsupported):
        simple_supports(d, orbit, WINDOW)
    with pytest.raises(FiniteOrbitUnsupported):
        restrict_rank1(d, finite_orbit.phi, orbit, None, WINDOW)


def test_explicit_modules_are_simple(finite_orbit):
    presented = fixed_datum(finite_orbit.datum, finite_orbit.phi).presented
    modules = finite_orbit.modules
    assert verify_explicit_module(modules["V"].module, finite_orbit.datum).simple
    for name in ("M+", "M-"):
        assert verify_explicit_module(modules[name].module, presented).simple
    assert hom_dimension(modules["M+"].module, modules["M-"].module, presented) == 0
    assert hom_dimension(modules["M+"].module, modules["M+"].module, presented) == 1


def test_explicit_restriction(finite_orbit):
    restriction = explicit_restriction(finite_orbit, finite_orbit.restrictions[0], 16)
    assert restriction.passed
    assert restriction.checks["decomposes_as_direct_sum"]
    assert restriction.hom == {"Hom(M+, M-)": 0}


def test_corrupted_module_violates_a_relation(finite_orbit):
    v = finite_orbit.modules["V"].module
    field = finite_orbit.field
    plus = [list(row) for row in v.matrices["X+"]]
    plus[1][2] = field(7)
    corrupted = replace(v, matrices={"X+": plus, "X-": v.matrices["X-"]})
    with pytest.raises(RelationViolated):
        verify_explicit_module(corrupted, finite_orbit.datum)


def test_repeated_weights_are_inconclusive(q):
    point = MaxIdealPoint((q(1),))
    zero, one = q.zero, q.one
    module = ExplicitModule([point, point], {"X+": [[zero, zero], [one, zero]], "X-": [[zero, one], [zero, zero]]})
    with pytest.raises(SpinInconclusive):
        is_simple(module, q)


def test_residue_degree(finite_orbit, infinite_orbit):
    assert residue_degree(infinite_orbit.phi) == 1
    with pytest.raises(UnsupportedResidueComputation):
        residue_degree(finite_orbit.phi)
    assert residue_degree(finite_orbit.phi, 2) == 2


def test_orbit_rendering(infinite_orbit, orbit, golden):
    d = infinite_orbit.datum
    s = norm_element(d.sigma[0], d.t[0], 3)
    text = render_orbit(6, 3, norm_breaks(s, orbit, 6))
    assert text == golden("orbit_infinite_w6_m3.txt")


def test_orbit_rendering_marks_the_support(infinite_orbit, orbit):
    d = infinite_orbit.datum
    middle = simple_supports(d, orbit, WINDOW)[1]
    s = norm_element(d.sigma[0], d.t[0], 3)
    first_line = render_orbit(2, 3, norm_breaks(s, orbit, 2), middle).splitlines()[0]
    assert first_line.split() == [".", ".", ".", "/", "\\", "[", "]"]
