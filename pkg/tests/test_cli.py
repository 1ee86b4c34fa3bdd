"""
Tests for the tgwa command line
"""

import json

import pytest

from tgwa.cli.library import scenario_names
from tgwa.cli.main import main
from tgwa.cli.scenario import build_scenario
from tgwa.weyl.fixedring import fixed_datum


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_list_scenarios(capsys):
    code, out, _ = run_cli(capsys, "--list-scenarios")
    assert code == 0
    lines = out.splitlines()
    assert [line.split()[0] for line in lines] == scenario_names()


def test_no_command_prints_usage(capsys):
    code, out, err = run_cli(capsys)
    assert code == 2
    assert out == ""
    assert "usage" in err


def test_cartan_text(capsys):
    code, out, _ = run_cli(capsys, "--scenario", "a2-simple", "cartan")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "command: cartan"
    assert "type: A2" in lines
    assert lines[-1] == "status: passed"


def test_cartan_structured_is_deterministic(capsys):
    argv = ("cartan", "--scenario", "a2-simple", "--format", "structured")
    _, first, _ = run_cli(capsys, *argv)
    _, second, _ = run_cli(capsys, *argv)
    assert first == second
    data = json.loads(first)
    assert data["results"]["cartan"] == [[2, -1], [-1, 2]]
    assert data["results"]["minimal_polynomials"] == {"1,2": "x^2 - 2*x + 1", "2,1": "x^2 - 2*x + 1"}


def test_fixed_ring_output_parses_back(capsys, weyl):
    code, out, _ = run_cli(capsys, "--format", "structured", "fixed-ring")
    assert code == 0
    results = json.loads(out)["results"]
    assert results["fixed_subring"]["kind"] == "identity"
    assert results["datum"]["t"] == ["h^2 + h"]
    doc = {"field": results["field"], "datum": results["datum"]}
    assert build_scenario(doc).datum == fixed_datum(weyl.datum, weyl.phi).datum


def test_input_errors_exit_with_2(capsys, tmp_path):
    code, _, err = run_cli(capsys, "--scenario", str(tmp_path / "missing.yaml"), "cartan")
    assert code == 2
    assert "InputError" in err

    bad = tmp_path / "bad.yaml"
    bad.write_text(
        'datum:\n  vars: [h]\n  sigma: [["h + 1"], ["h - 1"]]\n  t: ["h", "h"]\n  mu: [["1"]]\n', encoding="utf-8"
    )
    code, _, err = run_cli(capsys, "--scenario", str(bad), "check")
    assert code == 2
    assert "SchemaError" in err and "mu must be" in err

    code, _, _ = run_cli(capsys, "no-such-command")
    assert code == 2
    code, _, _ = run_cli(capsys, "--format", "svg", "cartan")
    assert code == 2
    code, _, _ = run_cli(capsys, "--set", "alpha", "cartan")
    assert code == 2


def test_mul(capsys):
    code, out, _ = run_cli(capsys, "mul", "X-", "X+")
    assert code == 0
    assert "product: h" in out.splitlines()


def test_mul_both_orders_share_one_profile(capsys):
    code, out, err = run_cli(capsys, "mul", "X+", "X-")
    assert code == 0, err
    lines = out.splitlines()
    assert "product: h - 1" in lines

    code, out, err = run_cli(capsys, "mul", "X+", "X+")
    assert code == 0, err
    assert "ProfileMismatch" not in err


def test_normal_form(capsys):
    code, out, _ = run_cli(capsys, "normal-form", "X+ h")
    assert code == 0
    assert "normal_form: (h - 1)*X1+" in out.splitlines()


def test_ore(capsys):
    code, out, _ = run_cli(capsys, "--format", "structured", "ore", "--scenario", "quantized-weyl")
    assert code == 0
    assert json.loads(out)["results"]["verified"] is True


def test_s_poly(capsys):
    code, out, _ = run_cli(capsys, "s-poly", "5", "2", "1")
    assert code == 0
    lines = out.splitlines()
    assert "S: 6" in lines
    assert 'sequence: ["1", "2", "3", "4", "5", "6"]' in lines
    assert "nonvanishing: ProvenAllNonzero" in lines


def test_s_poly_with_a_zero(capsys):
    code, out, _ = run_cli(capsys, "s-poly", "3", "0", "1")
    assert code == 0
    assert "nonvanishing: ZeroAt(1)" in out.splitlines()


def test_fiber_mul(capsys):
    code, out, _ = run_cli(capsys, "fiber-mul", "X1+", "X1-")
    assert code == 0
    assert "product: (h - 1)" in out.splitlines()


def test_c_power(capsys):
    code, out, _ = run_cli(capsys, "c-power", "2")
    assert code == 0
    lines = out.splitlines()
    assert "centralizes: true" in lines
    assert "C: X2+*X1+*(1/(h))" in lines


def test_cylinder_ascii(capsys, golden):
    code, out, _ = run_cli(capsys, "--window", "4", "--format", "ascii", "cylinder")
    assert code == 0
    assert out == golden("cylinder_fiber_6_2_w4_m1.txt")


def test_cylinder_svg(capsys):
    code, out, _ = run_cli(capsys, "cylinder", "--window", "4", "--format", "svg")
    assert code == 0
    assert "<svg" in out


def test_restrict(capsys):
    code, out, _ = run_cli(capsys, "--format", "structured", "restrict")
    assert code == 0
    orbit = json.loads(out)["results"]["orbits"][0]
    assert orbit["window"] == 12
    supports = [r["support"] for r in orbit["restrictions"]]
    assert supports == ["(-inf, 0]", "(0, 2]", "(2, +inf)"]
    middle = orbit["restrictions"][1]["components"]
    assert [c["interval"] for c in middle] == [None, "(-2, 1]", "(-1, 2]"]


def test_weight_modules_on_the_finite_orbit(capsys):
    code, out, _ = run_cli(capsys, "--format", "structured", "weight-modules", "--scenario", "finite-orbit")
    assert code == 0
    results = json.loads(out)["results"]
    assert results["modules"]["V"]["simple"] is True
    assert results["hom_dimensions"] == {"Hom(M+, M-)": 0}


def test_tensor(capsys):
    code, out, _ = run_cli(
        capsys, "--format", "structured", "tensor", "--set", "alpha=-1", "--with", "infinite-orbit-breaks"
    )
    assert code == 0
    results = json.loads(out)["results"]
    assert results["field"] == {"conductor": 3}
    assert results["cartan"]["cartan"] == [[2, 0], [0, 2]]
    assert "fixed_datum" in results


@pytest.mark.parametrize("name", scenario_names())
def test_check_builtin_scenarios(capsys, name):
    code, out, err = run_cli(capsys, "check", "--scenario", name)
    assert code == 0, out + err


def test_verify_paper_subset(capsys):
    code, out, _ = run_cli(
        capsys, "--format", "structured", "verify-paper", "--only", "s-poly", "diagram", "--samples", "s-poly=5"
    )
    assert code == 0
    results = json.loads(out)["results"]
    assert sorted(results) == ["diagram", "s-poly"]
    assert all(suite["passed"] for suite in results.values())


def test_check_reports_expectation_failures(capsys, tmp_path):
    scenario = tmp_path / "wrong.yaml"
    scenario.write_text(
        'datum:\n  vars: [h]\n  sigma: [["h - 1"]]\n  t: ["h"]\nexpect:\n  type: A2\n', encoding="utf-8"
    )
    code, out, _ = run_cli(capsys, "check", "--scenario", str(scenario))
    assert code == 1
    assert "  expect.type" in out.splitlines()
