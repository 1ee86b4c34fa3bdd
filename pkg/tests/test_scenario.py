"""
Tests for scenario parsing and diagnostics
"""

import pytest

from tgwa.cli.library import builtin_scenario, load_scenario, scenario_text
from tgwa.cli.scenario import build_scenario, datum_to_schema, parse_scenario
from tgwa.core.exceptions import ExpressionSyntaxError, InputError, ScenarioSyntaxError, SchemaError
from tgwa.weyl.fixedring import fixed_datum

TINY = """\
name: tiny
datum:
  vars: [h]
  sigma: [["h - 1"]]
  t: ["{t}"]
"""


def _doc(**datum):
    base = {"vars": ["h"], "sigma": [["h - 1"]], "t": ["h"]}
    base.update(datum)
    return {"name": "doc", "datum": base}


def test_builtin_text_parses_back(weyl):
    parsed = parse_scenario(scenario_text("weyl"))
    assert parsed.datum == weyl.datum
    assert parsed.phi.alpha == weyl.phi.alpha
    assert parsed.checks == weyl.checks


def test_tiny_scenario():
    s = parse_scenario(TINY.format(t="h*(h - 2)"))
    assert s.name == "tiny"
    assert s.field.conductor == 1
    assert str(s.datum.t[0]) == "h^2 - 2*h"
    assert s.phi is None
    assert s.datum.mu[0][0] == 1


def test_non_square_mu_is_located():
    text = """\
name: bad-mu
datum:
  vars: [h]
  sigma: [["h + 1"], ["h - 1"]]
  t: ["h", "h + 1"]
  mu: [["1", "2"]]
"""
    with pytest.raises(SchemaError) as info:
        parse_scenario(text)
    assert "mu must be" in str(info.value)
    assert info.value.path == "datum"
    assert info.value.line == 3


def test_yaml_syntax_error_has_a_line():
    with pytest.raises(ScenarioSyntaxError) as info:
        parse_scenario("name: x\ndatum: [1, 2\n")
    assert info.value.line is not None
    assert info.value.line >= 2


def test_expression_error_is_located():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_scenario(TINY.format(t="h +"))
    assert info.value.location == "line 5: datum.t[0]"
    assert info.value.column == 4


def test_extra_fields_are_rejected():
    with pytest.raises(SchemaError) as info:
        build_scenario(_doc(foo=1))
    assert info.value.path == "datum.foo"


def test_booleans_are_not_expressions():
    with pytest.raises(SchemaError) as info:
        build_scenario(_doc(t=[True]))
    assert info.value.path == "datum.t[0]"


def test_a_scenario_must_be_a_mapping():
    with pytest.raises(SchemaError):
        parse_scenario("- just\n- a list\n")


def test_conductor_is_inferred_from_zeta_orders():
    assert build_scenario(_doc(t=["zeta(3)*h"])).field.conductor == 3
    doc = _doc(t=["zeta(3)*h"])
    doc["field"] = {"conductor": 4}
    assert build_scenario(doc).field.conductor == 12
    assert build_scenario(_doc(), conductor=6).field.conductor == 6


def test_params_and_square_roots():
    s = builtin_scenario("finite-orbit", {"z": "4"})
    assert s.params["z"] == 4
    assert s.params["rz"] == 2


def test_parameter_names_must_not_clash():
    doc = _doc()
    doc["params"] = {"h": "1"}
    with pytest.raises(SchemaError) as info:
        build_scenario(doc)
    assert "clashes" in str(info.value)


def test_restriction_references_must_exist():
    doc = _doc()
    doc["phi"] = {"alpha": ["-1"]}
    doc["modules"] = [{"kind": "restriction", "source": "V", "summands": ["W"], "basis": [["1"]]}]
    with pytest.raises(SchemaError) as info:
        build_scenario(doc)
    assert "unknown module" in str(info.value)


def test_fixed_modules_need_phi():
    doc = _doc()
    doc["modules"] = [
        {"kind": "explicit", "name": "M", "over": "fixed", "weights": [["1"]], "matrices": {"X+": [["0"]], "X-": [["0"]]}}
    ]
    with pytest.raises(SchemaError):
        build_scenario(doc)


def test_unknown_checks_are_rejected():
    doc = _doc()
    doc["checks"] = ["consistency", "everything"]
    with pytest.raises(SchemaError) as info:
        build_scenario(doc)
    assert "everything" in str(info.value)


def test_fixed_datum_round_trips_through_the_schema():
    s = builtin_scenario("quantized-weyl", {"alpha": '["-1", "zeta(3)", "1"]'})
    result = fixed_datum(s.datum, s.phi)
    doc = {"field": {"conductor": s.field.conductor}, "datum": datum_to_schema(result.datum)}
    assert build_scenario(doc).datum == result.datum


def test_scenario_files(tmp_path):
    path = tmp_path / "tiny.yaml"
    path.write_text(TINY.format(t="h"), encoding="utf-8")
    assert load_scenario(str(path)).name == "tiny"
    with pytest.raises(InputError):
        load_scenario(str(path), {"alpha": "1"})
    with pytest.raises(InputError):
        load_scenario(str(tmp_path / "missing.yaml"))
