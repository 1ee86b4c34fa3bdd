"""
Built-in scenario library

Each builder turns a preset of config/library.yaml into a scenario document
with the same schema as scenario files, so built-in and user scenarios go
through one parser.
"""

from functools import lru_cache
from pathlib import Path
from typing import Callable, Dict, List, Mapping, Optional

import yaml

from tgwa.cli.scenario import Scenario, build_scenario, parse_scenario
from tgwa.core.config import settings
from tgwa.core.exceptions import InputError
from tgwa.core.logging import setup_logging

logger = setup_logging()

Preset = Dict[str, object]


@lru_cache(maxsize=4)
def _read_presets(path: str) -> Dict[str, Preset]:
    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f)
    logger.debug(f"loaded {len(data)} scenario presets from {path}")
    return data


def load_presets(path: str = None) -> Dict[str, Preset]:
    return _read_presets(str(path or settings.LIBRARY_PATH))


def _as_list(value) -> List[str]:
    return [str(v) for v in value] if isinstance(value, list) else [str(value)]


def _weyl(p: Preset) -> dict:
    return {
        "datum": {"vars": ["h"], "sigma": [["h - 1"]], "t": ["h"]},
        "phi": {"alpha": _as_list(p["alpha"])},
        "modules": [{"kind": "orbit", "base": _as_list(p["base"])}],
        "checks": ["consistency", "cartan", "fixed-ring", "ore", "weight-modules", "restrict"],
    }


def _quantized_weyl(p: Preset) -> dict:
    n = int(p["n"])
    q = _as_list(p["q"])
    lambdas = {str(k): str(v) for k, v in dict(p["lambda"]).items()}
    if len(q) < n:
        raise InputError(f"quantized-weyl with n = {n} needs {n} values of q")
    names = [f"h{j + 1}" for j in range(n)]
    params = {f"q{i + 1}": q[i] for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            key = f"{i + 1}{j + 1}"
            if key not in lambdas:
                raise InputError(f"quantized-weyl needs lambda {key}")
            params[f"l{key}"] = lambdas[key]
    sigma = []
    for i in range(n):
        images = []
        for j in range(n):
            if j < i:
                images.append(names[j])
            elif j == i:
                shifts = "".join(f" + (q{k + 1} - 1)*{names[k]}" for k in range(i))
                images.append(f"1 + q{i + 1}*{names[i]}{shifts}")
            else:
                images.append(f"q{i + 1}*{names[j]}")
        sigma.append(images)
    # mu_ij = lambda_ji for i < j and q_j lambda_ji for i > j, lambda_ji = lambda_ij^-1
    mu = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append("1")
            elif i < j:
                row.append(f"l{i + 1}{j + 1}^-1")
            else:
                row.append(f"q{j + 1}*l{j + 1}{i + 1}")
        mu.append(row)
    return {
        "params": params,
        "datum": {"vars": names, "sigma": sigma, "t": list(names), "mu": mu},
        "phi": {"alpha": _as_list(p["alpha"])[:n]},
        "checks": ["consistency", "cartan", "fixed-ring", "ore"],
    }


def _a2_simple(p: Preset) -> dict:
    return {
        "datum": {"vars": ["h"], "sigma": [["h + 1"], ["h - 1"]], "t": ["h", "h + 1"]},
        "phi": {"alpha": _as_list(p["alpha"])},
        "checks": ["consistency", "cartan", "fixed-ring"],
    }


def _a2_family(p: Preset) -> dict:
    return {
        "params": {"p": str(p["p"]), "beta": str(p["beta"]), "mu": str(p["mu"])},
        "datum": {
            "vars": ["h"],
            "sigma": [["p*h + beta"], ["(h - beta)/p"]],
            "t": ["h", "p*h + beta"],
            "mu": [["1", "mu"], ["mu^-1", "1"]],
        },
        "phi": {"alpha": _as_list(p["alpha"])},
        "checks": ["consistency", "cartan", "fixed-ring"],
    }


def _sergeev(p: Preset) -> dict:
    return {
        "datum": {
            "vars": ["h1", "h2"],
            "sigma": [["h1 - 1", "h2"], ["h1", "h2 - 1"]],
            "t": ["h2 - h1", "h2 - h1 + 1"],
        },
        "checks": ["consistency", "cartan"],
    }


def _mazorchuk_turowska(p: Preset) -> dict:
    return {
        "datum": {
            "vars": ["h1", "h2"],
            "sigma": [["h1 + 1", "h2"], ["h1 - 1", "h2"]],
            "t": ["h1*h2", "h1 + 1"],
        },
        "checks": ["consistency", "cartan"],
    }


def _mu_q_family(p: Preset) -> dict:
    return {
        "params": {"mu": str(p["mu"]), "q": str(p["q"])},
        "datum": {
            "vars": ["h1", "h2"],
            "sigma": [["mu*q^-1*h1 - h2", "mu*q*h2"], ["mu*q*h1 + h2", "mu*q^-1*h2"]],
            "t": ["h1", "mu^-1*q^-1*h1 - mu^-2*h2"],
            "mu": [["1", "mu"], ["mu", "1"]],
        },
        "checks": ["consistency", "cartan"],
    }


def _kleinian_fiber(p: Preset) -> dict:
    return {
        "datum": {
            "vars": ["h"],
            "sigma": [[f"h - ({b})"] for b in _as_list(p["beta"])],
            "t": _as_list(p["t"]),
        },
        "checks": ["consistency", "cartan"],
    }


def _fiber_6_2(p: Preset) -> dict:
    return {
        "datum": {"vars": ["h"], "sigma": [["h - 1"], ["h + 1"]], "t": ["h", "h - 1"]},
        "phi": {"alpha": _as_list(p["alpha"])},
        "checks": ["consistency", "cartan", "fixed-ring"],
    }


def _finite_orbit(p: Preset) -> dict:
    # basis v(2), v(2i), v(-2), v(-2i); column j is the image of basis vector j
    v_plus = [[0, -5, 0, 0], [0, 0, 3, 0], [0, 0, 0, -5], ["3/z", 0, 0, 0]]
    v_minus = [[0, 0, 0, "z"], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]

    def fixed_module(name: str, sign: str) -> dict:
        return {
            "kind": "explicit",
            "name": name,
            "over": "fixed",
            "weights": [["4"], ["-4"]],
            "labels": ["w(4)", "w(-4)"],
            "matrices": {"X+": [[0, -5], [f"{sign}3/rz", 0]], "X-": [[0, f"{sign}rz"], [1, 0]]},
        }

    return {
        "params": {"z": str(p["z"])},
        "square_roots": {"rz": "z"},
        "datum": {"vars": ["h"], "sigma": [["zeta(4)*h"]], "t": ["h^2 - 1"]},
        "phi": {"alpha": ["1"], "on_R": ["-1"]},
        "modules": [
            {
                "kind": "explicit",
                "name": "V",
                "weights": [["2"], ["2*zeta(4)"], ["-2"], ["-2*zeta(4)"]],
                "labels": ["v(2)", "v(2i)", "v(-2)", "v(-2i)"],
                "matrices": {"X+": v_plus, "X-": v_minus},
            },
            fixed_module("M+", ""),
            fixed_module("M-", "-"),
            {
                "kind": "restriction",
                "source": "V",
                "summands": ["M+", "M-"],
                "basis": [["rz", 0, "-rz", 0], [0, "rz", 0, "-rz"], [1, 0, 1, 0], [0, 1, 0, 1]],
            },
        ],
        "checks": ["consistency", "cartan", "fixed-ring", "weight-modules", "restrict"],
    }


def _infinite_orbit_breaks(p: Preset) -> dict:
    return {
        "datum": {"vars": ["h"], "sigma": [["h - 1"]], "t": ["h*(h - 2)"]},
        "phi": {"alpha": _as_list(p["alpha"])},
        "modules": [{"kind": "orbit", "base": _as_list(p["base"]), "window": int(p["window"])}],
        "checks": ["consistency", "cartan", "fixed-ring", "weight-modules", "restrict"],
    }


BUILDERS: Dict[str, Callable[[Preset], dict]] = {
    "weyl": _weyl,
    "quantized-weyl": _quantized_weyl,
    "a2-simple": _a2_simple,
    "a2-family": _a2_family,
    "sergeev": _sergeev,
    "mazorchuk-turowska": _mazorchuk_turowska,
    "mu-q-family": _mu_q_family,
    "kleinian-fiber": _kleinian_fiber,
    "fiber-6-2": _fiber_6_2,
    "finite-orbit": _finite_orbit,
    "infinite-orbit-breaks": _infinite_orbit_breaks,
}


def scenario_names() -> List[str]:
    return list(BUILDERS)


def _apply_overrides(name: str, preset: Preset, overrides: Mapping[str, str]) -> Preset:
    preset = dict(preset)
    for key, text in overrides.items():
        if key not in preset or key in ("description", "expect"):
            raise InputError(f"built-in scenario {name} has no parameter {key!r}")
        preset[key] = yaml.safe_load(text)
    if overrides:
        logger.info(f"{name}: preset overridden ({', '.join(sorted(overrides))}); expectations dropped")
        preset.pop("expect", None)
    return preset


def scenario_document(name: str, overrides: Mapping[str, str] = None) -> dict:
    """The scenario document of a built-in scenario"""
    if name not in BUILDERS:
        raise InputError(f"unknown scenario {name!r}; see --list-scenarios")
    presets = load_presets()
    preset = _apply_overrides(name, presets.get(name, {}), overrides or {})
    doc = {"name": name, "description": preset.get("description", "")}
    doc.update(BUILDERS[name](preset))
    if preset.get("expect"):
        doc["expect"] = preset["expect"]
    return doc


def scenario_text(name: str, overrides: Mapping[str, str] = None) -> str:
    return yaml.safe_dump(scenario_document(name, overrides), sort_keys=False)


def builtin_scenario(name: str, overrides: Mapping[str, str] = None, conductor: int = None) -> Scenario:
    return build_scenario(scenario_document(name, overrides), conductor=conductor)


def load_scenario(source: str, overrides: Mapping[str, str] = None, conductor: int = None) -> Scenario:
    """A scenario file path, or the name of a built-in scenario"""
    path = Path(source)
    if source in BUILDERS and not path.is_file():
        return builtin_scenario(source, overrides, conductor)
    if overrides:
        raise InputError("--set applies to built-in scenarios only")
    if not path.is_file():
        raise InputError(f"no scenario file or built-in scenario named {source!r}")
    return parse_scenario(path.read_text(encoding="utf-8"), conductor)


def describe_library() -> Dict[str, str]:
    presets = load_presets()
    return {name: str(presets.get(name, {}).get("description", "")) for name in BUILDERS}


def natural_conductor(source: str, overrides: Optional[Mapping[str, str]] = None) -> int:
    return load_scenario(source, overrides).field.conductor
