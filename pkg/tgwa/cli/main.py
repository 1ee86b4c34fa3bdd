"""
Command line entry point

Every command loads a scenario (a YAML file or a built-in name), dispatches
to the library operations and returns a Report. Reports go to stdout, logs
to stderr.
"""

import argparse
import sys
import time
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Callable, Dict, List, Optional

from dotenv import load_dotenv

from tgwa import __version__
from tgwa.algebra.expressions import parse_expression, zeta_orders
from tgwa.algebra.scalars import cyclotomic_field, lcm
from tgwa.cli.library import describe_library, load_scenario, natural_conductor
from tgwa.cli.reports import Report, render
from tgwa.cli.scenario import Scenario, datum_to_schema
from tgwa.cli.verification import SUITES, expectation_checks, explicit_restriction, run_suites
from tgwa.core.config import settings
from tgwa.core.exceptions import (
    CoprimalityViolation,
    InputError,
    NotASquare,
    RelationViolated,
    SpinInconclusive,
    TGWAError,
    UnsupportedFeature,
)
from tgwa.core.logging import setup_logging
from tgwa.modules.cylinder import cylinder, render_ascii, render_svg
from tgwa.modules.weight import (
    breaks,
    check_simple_relations,
    hom_dimension,
    is_simple,
    module_relations,
    norm_breaks,
    orbit_of,
    render_orbit,
    restrict_rank1,
    simple_supports,
)
from tgwa.weyl.a1n import from_datum, normal_form, ore_presentation, parse_word
from tgwa.weyl.a2 import (
    c_power,
    centralizes,
    centralizing_element,
    chebyshev_check,
    fiber_profile,
    s_identity_check,
    s_nonvanishing,
    s_poly,
    s_poly_closed,
)
from tgwa.weyl.datum import cartan_type, tensor_data, validate_datum
from tgwa.weyl.fixedring import fixed_datum, norm_element, tensor_invariants, verify_fixed_type

logger = setup_logging()

FORMATS = ("text", "structured", "ascii", "svg")

# scenario used when --scenario is not given
DEFAULT_SCENARIOS = {
    "check": "weyl",
    "cartan": "weyl",
    "fixed-ring": "weyl",
    "tensor": "weyl",
    "mul": "weyl",
    "normal-form": "weyl",
    "ore": "weyl",
    "fiber-mul": "fiber-6-2",
    "c-power": "fiber-6-2",
    "cylinder": "fiber-6-2",
    "weight-modules": "infinite-orbit-breaks",
    "restrict": "infinite-orbit-breaks",
}


@dataclass
class Invocation:
    """Parsed command line with the scenario loaded on first use"""

    command: str
    args: argparse.Namespace
    window: int
    bound: int
    fmt: str
    window_given: bool = False
    _scenario: Optional[Scenario] = dc_field(default=None, repr=False)

    @property
    def source(self) -> Optional[str]:
        return getattr(self.args, "scenario", None) or DEFAULT_SCENARIOS.get(self.command)

    @property
    def overrides(self) -> Dict[str, str]:
        return parse_assignments(getattr(self.args, "set", None) or [])

    def scenario(self) -> Scenario:
        if self._scenario is None:
            if self.source is None:
                raise InputError(f"{self.command} needs --scenario")
            self._scenario = load_scenario(self.source, self.overrides)
            logger.info(f"loaded scenario {self._scenario.name} over Q(zeta_{self._scenario.field.conductor})")
        return self._scenario

    def orbit_window(self, requested: Optional[int]) -> int:
        if self.window_given or requested is None:
            return self.window
        return requested


def parse_assignments(items: List[str]) -> Dict[str, str]:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise InputError(f"--set expects KEY=VALUE, got {item!r}")
        out[key.strip()] = value.strip()
    return out


def _phi(s: Scenario):
    if s.phi is None:
        raise InputError(f"scenario {s.name} has no phi section")
    return s.phi


def _points(point) -> List[str]:
    return [str(c) for c in point.coords]


# Commands

def cmd_check(inv: Invocation) -> Report:
    s = inv.scenario()
    report = Report("check", s.schema())
    consistency = validate_datum(s.datum)
    report.results["consistency"] = consistency.as_dict()
    if s.expect is None or s.expect.consistent is not False:
        report.expect("consistency", consistency.overall)
    for name in s.checks:
        if name == "consistency":
            continue
        sub = COMMANDS[name](inv)
        report.results[name] = sub.results
        report.failures.extend(f"{name}.{f}" for f in sub.failures)
    expectations = expectation_checks(s, inv.bound)
    if expectations:
        report.results["expectations"] = expectations
    for key, ok in expectations.items():
        report.expect(key, ok)
    return report


def cmd_cartan(inv: Invocation) -> Report:
    s = inv.scenario()
    return Report("cartan", s.schema(), cartan_type(s.datum, inv.bound).as_dict())


def cmd_fixed_ring(inv: Invocation) -> Report:
    s = inv.scenario()
    a = _phi(s)
    result = fixed_datum(s.datum, a, inv.bound)
    fixed = result.fixed_subring
    out = {
        "field": {"conductor": s.field.conductor},
        "datum": datum_to_schema(result.datum),
        "fixed_subring": {
            "kind": fixed.kind,
            "order": fixed.order,
            "generators": [str(g) for g in fixed.generators],
        },
        "hypothesis": result.hypothesis.as_dict(),
        "consistency": result.consistency.as_dict(),
        "cartan": result.cartan.as_dict(),
        "label": result.label,
    }
    if result.presented is not None:
        out["presented"] = datum_to_schema(result.presented)
    report = Report("fixed-ring", s.schema(), out)
    try:
        out["type_checks"] = verify_fixed_type(s.datum, a, inv.bound).as_dict()["checks"]
    except TGWAError as e:
        out["type_checks"] = {"error": str(e)}
        report.expect("type_preserved", False)
    report.expect("consistency_inherited", result.consistency.regular and result.consistency.cons1_ok)
    return report


def cmd_tensor(inv: Invocation) -> Report:
    other = inv.args.other
    conductor = lcm(natural_conductor(inv.source, inv.overrides), natural_conductor(other))
    a = load_scenario(inv.source, inv.overrides, conductor)
    b = load_scenario(other, None, conductor)
    d = tensor_data(a.datum, b.datum)
    cartan = cartan_type(d, inv.bound)
    out = {
        "field": {"conductor": conductor},
        "factors": [a.name, b.name],
        "datum": datum_to_schema(d),
        "cartan": cartan.as_dict(),
        "consistency": validate_datum(d).as_dict(),
    }
    report = Report("tensor", a.schema(), out)
    ca, cb = cartan_type(a.datum, inv.bound).cartan, cartan_type(b.datum, inv.bound).cartan
    if ca is not None and cb is not None:
        size = len(ca) + len(cb)
        expected = [[0] * size for _ in range(size)]
        for i, row in enumerate(ca):
            expected[i][: len(row)] = row
        for i, row in enumerate(cb):
            expected[len(ca) + i][len(ca):] = row
        report.expect("cartan_block_diagonal", cartan.cartan == expected)
    if a.phi is not None and b.phi is not None:
        try:
            whole = tensor_invariants([(a.datum, a.phi), (b.datum, b.phi)], inv.bound)
        except CoprimalityViolation as e:
            out["fixed_datum"] = f"not computed: {e}"
        else:
            out["fixed_datum"] = datum_to_schema(whole.datum)
            out["fixed_equals_tensor_of_fixed"] = True
    return report


def _a1n_elements(inv: Invocation, *words: str):
    """Normal forms of the words, all over one A1^n profile"""
    s = inv.scenario()
    profile = from_datum(s.datum, inv.bound)
    return [normal_form(profile, parse_word(w, s.datum.n, s.polynomial)) for w in words]


def cmd_mul(inv: Invocation) -> Report:
    s = inv.scenario()
    x, y = _a1n_elements(inv, inv.args.x, inv.args.y)
    return Report("mul", s.schema(), {"x": str(x), "y": str(y), "product": str(x * y)})


def cmd_normal_form(inv: Invocation) -> Report:
    s = inv.scenario()
    (element,) = _a1n_elements(inv, inv.args.word)
    return Report("normal-form", s.schema(), {"word": inv.args.word, "normal_form": str(element)})


def cmd_ore(inv: Invocation) -> Report:
    s = inv.scenario()
    presentation = ore_presentation(from_datum(s.datum, inv.bound))
    report = Report("ore", s.schema(), presentation.as_dict())
    for name, ok in presentation.ledger:
        report.expect(name, ok)
    return report


def cmd_s_poly(inv: Invocation) -> Report:
    args = inv.args
    if args.a < 0:
        raise InputError("a must be nonnegative")
    if getattr(args, "scenario", None):
        s = inv.scenario()
        field, params, scenario = s.field, s.params, s.schema()
    else:
        orders = zeta_orders(args.q) | zeta_orders(args.beta)
        field, params, scenario = cyclotomic_field(lcm(*orders) if orders else 1), {}, None
    q = parse_expression(args.q, field, params)
    beta = parse_expression(args.beta, field, params)
    value = s_poly(args.a, q, beta)
    closed = s_poly_closed(args.a, q, beta)
    out = {
        "a": args.a,
        "q": str(q),
        "beta": str(beta),
        "S": str(value),
        "closed_form": str(closed),
        "sequence": [str(s_poly(k, q, beta)) for k in range(args.a + 1)],
    }
    report = Report("s-poly", scenario, out)
    report.expect("recurrence_matches_closed_form", value == closed)
    if beta.is_zero():
        out["chebyshev"] = "beta is zero"
    else:
        try:
            out["chebyshev"] = chebyshev_check(args.a, q, beta)
            report.expect("chebyshev", out["chebyshev"])
        except NotASquare:
            out["chebyshev"] = "beta is not a square"
    if args.a >= 1:
        identity = all(s_identity_check(args.a, c, q, beta) for c in range(2, args.a + 2))
        out["product_identity"] = identity
        report.expect("product_identity", identity)
    if not beta.is_zero():
        out["nonvanishing"] = str(s_nonvanishing(-q, beta, args.a))
    return report


def cmd_fiber_mul(inv: Invocation) -> Report:
    s = inv.scenario()
    p = fiber_profile(s.datum)
    x, y = p.parse(inv.args.x), p.parse(inv.args.y)
    return Report("fiber-mul", s.schema(), {"x": str(x), "y": str(y), "product": str(x * y)})


def cmd_c_power(inv: Invocation) -> Report:
    s = inv.scenario()
    if inv.args.k < 1:
        raise InputError("k must be positive")
    p = fiber_profile(s.datum)
    m = inv.args.m
    if m is None and s.phi is not None:
        m = s.phi.orders[0]
    out = c_power(p, inv.args.k, m).as_dict()
    out["C"] = str(centralizing_element(p))
    report = Report("c-power", s.schema(), out)
    out["centralizes"] = centralizes(p, centralizing_element(p))
    report.expect("centralizes", out["centralizes"])
    return report


def _fixed_target(s: Scenario, bound: int):
    fixed = fixed_datum(s.datum, _phi(s), bound)
    return fixed.presented or fixed.datum


def cmd_weight_modules(inv: Invocation) -> Report:
    s = inv.scenario()
    out: Dict[str, object] = {}
    report = Report("weight-modules", s.schema(), out)
    diagrams = []
    orbits = []
    for request in s.orbits:
        window = inv.orbit_window(request.window)
        orbit = orbit_of(s.datum, request.base, window)
        entry: Dict[str, object] = {"base": _points(request.base), "kind": orbit.kind, "window": window}
        orbits.append(entry)
        if not orbit.infinite:
            entry["points"] = [_points(orbit.point(k)) for k in orbit.positions(window)]
            continue
        cuts = breaks(s.datum, orbit, window)
        entry["breaks"] = cuts.as_list()
        supports = {}
        for support in simple_supports(s.datum, orbit, window):
            relations = check_simple_relations(s.datum, orbit, support, window)
            supports[str(support)] = dict(sorted(relations.items()))
            for name, ok in relations.items():
                report.expect(f"{support}: {name}", ok)
            diagrams.append(f"support {support}\n" + render_orbit(window, 1, cuts, support))
        entry["simple_supports"] = supports
    if orbits:
        out["orbits"] = orbits

    modules = {}
    target = None
    for name, entry in sorted(s.modules.items()):
        if entry.over == "fixed" and target is None:
            target = _fixed_target(s, inv.bound)
        datum = s.datum if entry.over == "datum" else target
        relations = module_relations(entry.module, datum)
        result: Dict[str, object] = {
            "over": entry.over,
            "dim": entry.module.dim,
            "relations": dict(sorted(relations.items())),
        }
        for rel, ok in relations.items():
            report.expect(f"{name}: {rel}", ok)
        try:
            result["simple"] = is_simple(entry.module, datum.field) if all(relations.values()) else None
        except SpinInconclusive as e:
            result["simple"] = f"inconclusive: {e}"
        modules[name] = result
    if modules:
        out["modules"] = modules
        hom = {}
        for a, b in combinations(sorted(s.modules), 2):
            ma, mb = s.modules[a], s.modules[b]
            if ma.over == mb.over and set(ma.module.matrices) == set(mb.module.matrices):
                datum = s.datum if ma.over == "datum" else target
                hom[f"Hom({a}, {b})"] = hom_dimension(ma.module, mb.module, datum)
        if hom:
            out["hom_dimensions"] = hom
    if diagrams:
        report.raw = "\n".join(diagrams)
    return report


def cmd_restrict(inv: Invocation) -> Report:
    s = inv.scenario()
    a = _phi(s)
    out: Dict[str, object] = {}
    report = Report("restrict", s.schema(), out)
    diagrams = []
    orbits = []
    for request in s.orbits:
        window = inv.orbit_window(request.window)
        orbit = orbit_of(s.datum, request.base, window)
        supports = simple_supports(s.datum, orbit, window)
        s_breaks = norm_breaks(norm_element(s.datum.sigma[0], s.datum.t[0], a.orders[0]), orbit, window)
        restrictions = []
        for support in supports:
            try:
                restriction = restrict_rank1(s.datum, a, orbit, support, window, s.model.phi.residue_degree)
            except RelationViolated as e:
                logger.error(f"restriction of {support} failed: {e}")
                report.expect(f"restriction of {support}", False)
                continue
            restrictions.append(restriction.as_dict())
            diagrams.append(f"support {support}\n" + render_orbit(window, restriction.m, s_breaks, support))
        orbits.append({"base": _points(request.base), "window": window, "restrictions": restrictions})
    if orbits:
        out["orbits"] = orbits
    explicit = []
    for request in s.restrictions:
        result = explicit_restriction(s, request, inv.bound)
        explicit.append({"source": request.source, "summands": list(request.summands), **result.as_dict()})
        for name, ok in result.checks.items():
            report.expect(f"{request.source}: {name}", ok)
    if explicit:
        out["explicit"] = explicit
    if not orbits and not explicit:
        raise UnsupportedFeature(f"scenario {s.name} requests no orbit or restriction")
    if diagrams:
        report.raw = "\n".join(diagrams)
    return report


def cmd_cylinder(inv: Invocation) -> Report:
    s = inv.scenario()
    m = inv.args.m or 1
    diagram = cylinder(s.datum, inv.window, m)
    report = Report("cylinder", s.schema(), diagram.as_dict())
    report.raw = render_svg(diagram) if inv.fmt == "svg" else render_ascii(diagram)
    return report


def cmd_verify_paper(inv: Invocation) -> Report:
    args = inv.args
    samples = {k: int(v) for k, v in parse_assignments(args.samples or []).items()}
    try:
        suites = run_suites(args.only, args.seed, inv.window if inv.window_given else None, inv.bound, samples)
    except ValueError as e:
        raise InputError(str(e))
    report = Report("verify-paper", None, {name: r.as_dict() for name, r in suites.items()})
    for name, result in suites.items():
        for check in result.checks:
            report.expect(f"{name}.{check.name}", check.passed)
    return report


COMMANDS: Dict[str, Callable[[Invocation], Report]] = {
    "check": cmd_check,
    "cartan": cmd_cartan,
    "fixed-ring": cmd_fixed_ring,
    "tensor": cmd_tensor,
    "mul": cmd_mul,
    "normal-form": cmd_normal_form,
    "ore": cmd_ore,
    "s-poly": cmd_s_poly,
    "fiber-mul": cmd_fiber_mul,
    "c-power": cmd_c_power,
    "weight-modules": cmd_weight_modules,
    "restrict": cmd_restrict,
    "cylinder": cmd_cylinder,
    "verify-paper": cmd_verify_paper,
}

# commands with a diagram rendering
DIAGRAMS = {"cylinder": ("ascii", "svg"), "weight-modules": ("ascii",), "restrict": ("ascii",)}


def _common_options() -> argparse.ArgumentParser:
    """Options accepted both before and after the command name"""
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--scenario", help="scenario file or built-in scenario name")
    common.add_argument("--set", action="append", metavar="KEY=VALUE",
                        help="override a preset parameter of a built-in scenario")
    common.add_argument("--window", type=int, help=f"search window W (default {settings.DEFAULT_WINDOW})")
    common.add_argument("--bound", type=int, help=f"iteration bound B (default {settings.DEFAULT_BOUND})")
    common.add_argument("--format", choices=FORMATS, help="report format")
    common.add_argument("--log-level", help="loguru level for stderr logging")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="tgwa",
        description="Exact computations with twisted generalized Weyl algebras",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--list-scenarios", action="store_true", help="list the built-in scenarios and exit")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def add(name: str, text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=text, parents=[common])

    add("check", "consistency, the scenario's checks and its expectations")
    add("cartan", "Cartan matrix, minimal polynomials and type")
    add("fixed-ring", "fixed datum under the scenario's phi")
    p = add("tensor", "tensor product with a second scenario")
    p.add_argument("--with", dest="other", required=True, metavar="SCENARIO", help="second factor")
    p = add("mul", "product of two elements of a type (A1)^n algebra")
    p.add_argument("x")
    p.add_argument("y")
    p = add("normal-form", "canonical form of a word such as 'X1+ h1 X2-'")
    p.add_argument("word")
    add("ore", "iterated Ore extension presentation")
    p = add("s-poly", "S-polynomial S_a(q, beta)")
    p.add_argument("a", type=int)
    p.add_argument("q")
    p.add_argument("beta")
    p = add("fiber-mul", "product in the fiber algebra of a rank 2 datum over k[h]")
    p.add_argument("x")
    p.add_argument("y")
    p = add("c-power", "powers of the centralizing element C")
    p.add_argument("k", type=int)
    p.add_argument("--m", type=int, help="order of alpha_1 for C^phi (default from phi)")
    add("weight-modules", "simple weight modules of the scenario")
    add("restrict", "restriction of simple weight modules to the fixed ring")
    p = add("cylinder", "cylinder diagram of a rank 2 datum")
    p.add_argument("--m", type=int, help="order of phi on the first generator")
    p = add("verify-paper", "run the acceptance suites over the built-in library")
    p.add_argument("--only", nargs="+", choices=list(SUITES), metavar="SUITE", help="run only these suites")
    p.add_argument("--seed", type=int, help=f"random seed (default {settings.RANDOM_SEED})")
    p.add_argument("--samples", action="append", metavar="SUITE=N", help="sample size of a randomized check")
    return parser


def run(command: str, args: argparse.Namespace) -> Report:
    """Dispatch one command; raises TGWAError subclasses"""
    if command not in COMMANDS:
        raise InputError(f"unknown command {command!r}")
    fmt = getattr(args, "format", None) or settings.DEFAULT_FORMAT
    if fmt not in ("text", "structured") and fmt not in DIAGRAMS.get(command, ()):
        raise InputError(f"--format {fmt} is not available for {command}")
    window = getattr(args, "window", None)
    bound = getattr(args, "bound", None)
    if window is not None and window < 1 or bound is not None and bound < 1:
        raise InputError("--window and --bound must be positive")
    inv = Invocation(
        command,
        args,
        window or settings.DEFAULT_WINDOW,
        bound or settings.DEFAULT_BOUND,
        fmt,
        window_given=window is not None,
    )
    return COMMANDS[command](inv)


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if getattr(args, "log_level", None):
        setup_logging(args.log_level.upper())

    if args.list_scenarios:
        for name, description in describe_library().items():
            print(f"{name:24} {description}")
        return 0
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2

    start = time.perf_counter()
    try:
        report = run(args.command, args)
    except TGWAError as e:
        logger.debug(f"{args.command} failed: {e}")
        print(f"tgwa {args.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code
    logger.info(f"{args.command} finished in {time.perf_counter() - start:.3f}s")

    fmt = getattr(args, "format", None) or settings.DEFAULT_FORMAT
    sys.stdout.write(render(report, fmt))
    return 0 if report.passed else 1
