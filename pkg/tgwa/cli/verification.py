"""
Acceptance suites run by `verify-paper`

Every suite returns a list of named checks. Randomized checks draw from a
random.Random seeded with settings.RANDOM_SEED, so a run is reproducible.
"""

import json
import random
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product as cartesian
from typing import Callable, Dict, List, Optional, Sequence

from tgwa.algebra.basering import apply_aut, power_aut
from tgwa.algebra.rational import RationalFunction
from tgwa.algebra.scalars import cyclotomic_field
from tgwa.cli.library import builtin_scenario
from tgwa.cli.scenario import RestrictionRequest, Scenario, build_scenario
from tgwa.core.config import settings
from tgwa.core.exceptions import TGWAError
from tgwa.core.logging import setup_logging
from tgwa.modules.cylinder import cylinder, render_ascii
from tgwa.modules.weight import (
    ExplicitRestriction,
    check_simple_relations,
    orbit_of,
    projection_injective,
    restrict_explicit,
    restrict_rank1,
    simple_supports,
    verify_explicit_module,
    weight_space_accounting,
)
from tgwa.weyl.a1n import (
    A1nProfile,
    WordTerm,
    applicable_positions,
    from_datum,
    normal_form,
    ore_presentation,
    rewrite_step,
    rewrite_to_blocks,
    to_canonical,
)
from tgwa.weyl.a2 import (
    a2_profile,
    a2_relations,
    c_power,
    centralizes,
    centralizing_element,
    down_up_check,
    fiber_profile,
    rewrite_identity_holds,
    s_identity_check,
    s_nonvanishing,
    s_poly,
    s_poly_closed,
    serre_relations,
    spanning_monomials,
)
from tgwa.weyl.datum import TGWDatum, cartan_type, tensor_data, validate_datum
from tgwa.weyl.fixedring import fixed_datum, norm_element, tensor_invariants, verify_fixed_type

logger = setup_logging()


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteResult:
    name: str
    checks: List[Check] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        out = {"checks": {c.name: c.passed for c in self.checks}, "passed": self.passed}
        details = {c.name: c.detail for c in self.checks if c.detail}
        if details:
            out["details"] = details
        return out


@dataclass
class VerificationContext:
    rng: random.Random
    window: int
    bound: int
    samples: Dict[str, int] = dc_field(default_factory=dict)

    def sample_size(self, key: str, default: int) -> int:
        return self.samples.get(key, default)


def _guarded(name: str, test: Callable[[], bool]) -> Check:
    """A check whose exceptions count as failure"""
    try:
        return Check(name, bool(test()))
    except TGWAError as e:
        logger.error(f"check {name} failed: {e}")
        return Check(name, False, f"{type(e).__name__}: {e}")


def expectation_checks(s: Scenario, bound: int) -> Dict[str, bool]:
    """Compare a scenario's Cartan data against its `expect` section"""
    e = s.expect
    if e is None:
        return {}
    report = cartan_type(s.datum, bound)
    out: Dict[str, bool] = {}
    if e.type is not None:
        out["expect.type"] = report.type_tag == e.type
    if e.cartan is not None:
        out["expect.cartan"] = report.cartan == e.cartan
    for key, wanted in sorted((e.minimal_polynomials or {}).items()):
        pair = tuple(int(x) - 1 for x in key.split(","))
        out[f"expect.p{key.replace(',', '')}"] = pair in report.minpolys and report.minpoly_str(pair) == wanted
    if e.consistent is not None:
        out["expect.consistent"] = validate_datum(s.datum).overall == e.consistent
    return out


def explicit_restriction(s: Scenario, request: RestrictionRequest, bound: int) -> ExplicitRestriction:
    fixed = fixed_datum(s.datum, s.phi, bound)
    target = fixed.presented or fixed.datum
    summands = [(name, s.modules[name].module) for name in request.summands]
    return restrict_explicit(
        s.modules[request.source].module, s.datum, s.phi, fixed.fixed_subring, target, request.basis, summands
    )


# Random data

def _root(rng: random.Random) -> str:
    return f"zeta(12)^{rng.randrange(12)}"


def _random_orders(rng: random.Random, n: int) -> List[int]:
    pool = list(rng.choice([[1, 2, 3], [1, 3, 4]]))
    rng.shuffle(pool)
    return pool[:n]


def _alpha(m: int) -> str:
    return "1" if m == 1 else f"zeta({m})"


def quantized_weyl(rng: random.Random, n: int, orders: Sequence[int] = None) -> Scenario:
    orders = list(orders or [1] * n)
    overrides = {
        "n": str(n),
        "q": json.dumps([_root(rng) for _ in range(3)]),
        "lambda": json.dumps({f"{i}{j}": _root(rng) for i, j in ((1, 2), (1, 3), (2, 3))}),
        "alpha": json.dumps([_alpha(m) for m in orders] + ["1"] * (3 - n)),
    }
    return builtin_scenario("quantized-weyl", overrides, conductor=12)


def shift_datum(rng: random.Random, n: int, orders: Sequence[int]) -> Scenario:
    """sigma_i(h_j) = h_j - c_i delta_ij with t_i a product of linear factors in h_i"""
    names = [f"h{j + 1}" for j in range(n)]
    shifts = [rng.choice([-3, -2, -1, 1, 2, 3]) for _ in range(n)]
    sigma = [[f"{names[j]} - ({c})" if j == i else names[j] for j in range(n)] for i, c in enumerate(shifts)]
    t = []
    for name in names:
        roots = [rng.randint(-3, 3) for _ in range(rng.randint(1, 2))]
        t.append("*".join(f"({name} - ({r}))" for r in roots))
    doc = {
        "name": "random-shift",
        "datum": {"vars": names, "sigma": sigma, "t": t},
        "phi": {"alpha": [_alpha(m) for m in orders]},
    }
    return build_scenario(doc, conductor=12)


def _random_element(p: A1nProfile, rng: random.Random):
    ring = p.ring
    terms = {}
    for _ in range(rng.randint(1, 2)):
        d = tuple(rng.randint(-2, 2) for _ in range(p.n))
        coeff = ring.constant(rng.randint(-3, 3)) + ring.gen(rng.randrange(ring.nvars)).scale(
            ring.field(rng.randint(-2, 2))
        )
        terms[d] = terms[d] + coeff if d in terms else coeff
    return p.element(terms)


# Suites

def consistency_suite(ctx: VerificationContext) -> List[Check]:
    checks = []
    for n in (2, 3):
        for k in range(ctx.sample_size("consistency", 3)):
            s = quantized_weyl(ctx.rng, n)
            checks.append(_guarded(f"quantized_weyl_n{n}_{k}_consistent", lambda: validate_datum(s.datum).overall))
    s = quantized_weyl(ctx.rng, 2)
    d = s.datum
    mu = [list(row) for row in d.mu]
    mu[0][1] = mu[0][1] * 2
    corrupted = TGWDatum(d.ring, d.sigma, d.t, tuple(tuple(row) for row in mu))
    checks.append(_guarded("corrupted_mu_fails_cons1", lambda: not validate_datum(corrupted).cons1_ok))
    return checks


def cartan_suite(ctx: VerificationContext) -> List[Check]:
    checks = []
    for name in ("a2-simple", "a2-family", "sergeev", "mazorchuk-turowska", "mu-q-family", "kleinian-fiber"):
        s = builtin_scenario(name)
        for key, ok in expectation_checks(s, ctx.bound).items():
            checks.append(Check(f"{name}.{key}", ok))
    a = builtin_scenario("a2-simple").datum
    b = builtin_scenario("weyl").datum

    def block_diagonal() -> bool:
        ca, cb = cartan_type(a, ctx.bound).cartan, cartan_type(b, ctx.bound).cartan
        size = len(ca) + len(cb)
        expected = [[0] * size for _ in range(size)]
        for i, row in enumerate(ca):
            expected[i][: len(row)] = row
        for i, row in enumerate(cb):
            expected[len(ca) + i][len(ca):] = row
        return cartan_type(tensor_data(a, b), ctx.bound).cartan == expected

    checks.append(_guarded("tensor_cartan_block_diagonal", block_diagonal))
    return checks


def s_poly_suite(ctx: VerificationContext) -> List[Check]:
    field = cyclotomic_field(1)
    rng = ctx.rng

    def rational():
        return field(Fraction(rng.randint(-9, 9), rng.randint(1, 5)))

    pairs = [(rational(), rational()) for _ in range(ctx.sample_size("s-poly", 25))]
    checks = [
        Check("recurrence_matches_closed_form", all(
            s_poly(a, q, beta) == s_poly_closed(a, q, beta) for q, beta in pairs for a in range(31)
        ))
    ]
    identity_pairs = pairs[:3] + [(field(2), field(1))]
    checks.append(Check("product_identity", all(
        s_identity_check(a, c, q, beta)
        for q, beta in identity_pairs
        for a in range(1, 16)
        for c in range(2, 16)
    )))

    profiles = [Fraction(-1)]
    while len(profiles) < 20:
        p = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
        if p and p not in profiles:
            profiles.append(p)
    agree = True
    for p in profiles:
        # p12 = (x - p)(x - 1): lambda_1 = -(p + 1), lambda_2 = p
        l1, l2 = field(-(p + 1)), field(p)
        verdict = s_nonvanishing(l1, l2, 50)
        values = [s_poly(a, -l1, l2) for a in range(51)]
        zeros = [a for a, v in enumerate(values) if v.is_zero()]
        if verdict.kind == "ZeroAt":
            agree &= bool(zeros) and zeros[0] == verdict.a
        else:
            agree &= not zeros
    checks.append(Check("nonvanishing_matches_direct_evaluation", agree))
    minus_one = s_nonvanishing(field(0), field(-1), 50)
    checks.append(Check("p_minus_one_zero_at_odd_a", minus_one.kind == "ZeroAt" and minus_one.a % 2 == 1,
                        str(minus_one)))
    return checks


def a1n_suite(ctx: VerificationContext) -> List[Check]:
    checks = []
    weyl = from_datum(builtin_scenario("weyl").datum, ctx.bound)
    h = weyl.ring.gen(0)
    x, y = weyl.generator(0, 1), weyl.generator(0, -1)
    checks.append(Check("weyl_yx_is_h", y * x == weyl.scalar(h)))
    checks.append(Check("weyl_xy_is_h_minus_1", x * y == weyl.scalar(h - 1)))

    rng = ctx.rng
    profiles = [weyl] + [from_datum(quantized_weyl(rng, n).datum, ctx.bound) for n in (2, 3)]
    triples = ctx.sample_size("associativity", 200)
    associative = True
    for k in range(triples):
        p = profiles[k % len(profiles)]
        a, b, c = (_random_element(p, rng) for _ in range(3))
        associative &= (a * b) * c == a * (b * c)
    checks.append(Check(f"associativity_{triples}_triples", associative))

    confluent = True
    for p in profiles:
        letters = [(i, s) for i in range(p.n) for s in (1, -1)]
        for word in cartesian(letters, repeat=3):
            expected = normal_form(p, list(word))
            for pos in applicable_positions(word):
                step = rewrite_step(p, WordTerm(p.ring.one(), tuple(word)), pos)
                confluent &= to_canonical(p, rewrite_to_blocks(p, step)) == expected
    checks.append(Check("length_3_diamond_confluence", confluent))

    q = from_datum(quantized_weyl(rng, 2).datum, ctx.bound)
    d = q.datum
    powers = True
    for m in range(1, 6):
        s = norm_element(d.sigma[0], d.t[0], m)
        xp, xm = q.generator(0, 1) ** m, q.generator(0, -1) ** m
        powers &= xm * xp == q.scalar(s)
        powers &= xp * xm == q.scalar(apply_aut(power_aut(d.sigma[0], m), s))
    checks.append(Check("power_relations_m_le_5", powers))
    cross = True
    for m1 in range(1, 5):
        for m2 in range(1, 5):
            lhs = q.generator(0, 1) ** m1 * q.generator(1, -1) ** m2
            rhs = q.generator(1, -1) ** m2 * q.generator(0, 1) ** m1 * q.scalar(q.ring.constant(d.mu[0][1] ** (m1 * m2)))
            cross &= lhs == rhs
    checks.append(Check("cross_power_relations", cross))

    weyl_squared = from_datum(tensor_data(weyl.datum, weyl.datum), ctx.bound)
    for name, p in (("weyl", weyl), ("quantized_weyl", q), ("weyl_tensor_weyl", weyl_squared)):
        checks.append(_guarded(f"ore_presentation_{name}", lambda: ore_presentation(p).verified))
    return checks


def fixed_ring_suite(ctx: VerificationContext) -> List[Check]:
    rng = ctx.rng
    inherited = True
    failures = []
    for k in range(ctx.sample_size("fixed-ring", 50)):
        n = rng.randint(1, 3)
        orders = _random_orders(rng, n)
        s = quantized_weyl(rng, n, orders) if k % 2 else shift_datum(rng, n, orders)
        try:
            result = fixed_datum(s.datum, s.phi, ctx.bound)
            ok = result.consistency.regular and result.consistency.cons1_ok
        except TGWAError as e:
            logger.error(f"random datum {k} failed: {e}")
            ok = False
        if not ok:
            inherited = False
            failures.append(str(k))
    checks = [Check("inheritance_on_random_data", inherited, ", ".join(failures))]

    preserved = True
    for n in (2, 3):
        for _ in range(2):
            s = quantized_weyl(rng, n, _random_orders(rng, n))
            try:
                report = verify_fixed_type(s.datum, s.phi, ctx.bound)
                preserved &= report.checks.get("gamma_powers", False)
            except TGWAError as e:
                logger.error(f"type preservation failed: {e}")
                preserved = False
    checks.append(Check("a1n_type_preserved_with_gamma_powers", preserved))

    def tensor() -> bool:
        two = builtin_scenario("weyl", {"alpha": "-1"}, conductor=6)
        three = builtin_scenario("weyl", {"alpha": "zeta(3)"}, conductor=6)
        tensor_invariants([(two.datum, two.phi), (three.datum, three.phi)], ctx.bound)
        return True

    checks.append(_guarded("tensor_invariants_weyl2_weyl3", tensor))
    family = builtin_scenario("a2-family")

    def a2_fixed() -> bool:
        result = fixed_datum(family.datum, family.phi, ctx.bound)
        return result.consistency.regular and result.consistency.cons1_ok

    checks.append(_guarded("a2_family_fixed_datum_regular_cons1", a2_fixed))
    return checks


def fiber_suite(ctx: VerificationContext) -> List[Check]:
    s = builtin_scenario("fiber-6-2")
    p = fiber_profile(s.datum)
    ring = p.ring
    h = ring.gen(0)
    x1, x2 = p.generator(0, 1), p.generator(1, 1)
    c = centralizing_element(p)
    checks = [
        Check("C_as_scaled_X1X2", c == x1 * x2 * RationalFunction(ring.one(), h - 1)),
        Check("C_as_scaled_X2X1", c == x2 * x1 * RationalFunction(ring.one(), h)),
        Check("C_centralizes", centralizes(p, c)),
    ]
    checks.extend(_guarded(f"C^{k}_closed_form", lambda: bool(c_power(p, k))) for k in range(1, 6))
    checks.extend(_guarded(f"C^phi_is_C^{m}", lambda: c_power(p, m, m).fixed_element is not None) for m in (2, 3, 4))
    checks.append(Check("serre_relations_vanish", all(r.is_zero() for r in serre_relations(p).values())))
    checks.append(Check(
        "a2_relations_vanish", all(r.is_zero() for r in a2_relations(p, a2_profile(s.datum, ctx.bound)).values())
    ))
    field = s.field
    checks.append(Check("rewrite_identity_a_c_le_5", all(
        rewrite_identity_holds(p, a, b, field(2), field(1)) for a in range(1, 6) for b in range(1, 6)
    )))
    simple = fiber_profile(builtin_scenario("a2-simple").datum)
    checks.append(Check("down_up_substitution", all(down_up_check(simple).values())))
    spanning = spanning_monomials(simple, 2)
    checks.append(Check("spanning_monomials", spanning.all_nonzero and spanning.covered))
    return checks


INFINITE_ORBIT_TABLE = {
    "(-inf, 0]": ["(-inf, 0]", "(-inf, -2]", "(-inf, -1]"],
    "(0, 2]": [None, "(-2, 1]", "(-1, 2]"],
    "(2, +inf)": ["(0, +inf)", "(1, +inf)", "(2, +inf)"],
}


def weight_suite(ctx: VerificationContext) -> List[Check]:
    checks = []
    s = builtin_scenario("infinite-orbit-breaks")
    window = s.orbits[0].window or ctx.window
    orbit = orbit_of(s.datum, s.orbits[0].base, window)
    supports = simple_supports(s.datum, orbit, window)
    checks.append(Check("three_simple_supports", [str(x) for x in supports] == list(INFINITE_ORBIT_TABLE)))
    checks.append(Check("simple_module_relations", all(
        all(check_simple_relations(s.datum, orbit, support, window).values()) for support in supports
    )))
    for support in supports:
        def table_row(support=support) -> bool:
            restriction = restrict_rank1(s.datum, s.phi, orbit, support, window)
            return [c.as_dict()["interval"] for c in restriction.components] == INFINITE_ORBIT_TABLE[str(support)]

        checks.append(_guarded(f"restriction_of_{support}", table_row))
    fixed = fixed_datum(s.datum, s.phi, ctx.bound)
    checks.append(Check("infinite_orbit_projection_injective", projection_injective(fixed.fixed_subring, orbit, window)))
    points = [orbit.point(k) for k in orbit.positions(window)]
    accounting = weight_space_accounting(points, s.phi.phi_r, fixed.fixed_subring)
    checks.append(Check("infinite_orbit_weight_accounting", all(a == b for a, b in accounting.values())))

    f = builtin_scenario("finite-orbit")
    presented = fixed_datum(f.datum, f.phi, ctx.bound)
    target = presented.presented or presented.datum
    for name, entry in sorted(f.modules.items()):
        datum = f.datum if entry.over == "datum" else target
        checks.append(_guarded(f"module_{name}_simple", lambda: verify_explicit_module(entry.module, datum).simple))
    for request in f.restrictions:
        restriction = explicit_restriction(f, request, ctx.bound)
        checks.extend(Check(f"restriction.{k}", v) for k, v in sorted(restriction.checks.items()))
    return checks


def diagram_suite(ctx: VerificationContext) -> List[Check]:
    s = builtin_scenario("fiber-6-2")
    checks = []
    for m in range(1, 5):
        def two_components(m=m) -> bool:
            diagram = cylinder(s.datum, 8, m)
            return len(diagram.components) == 2 and all(c.unbounded for c in diagram.components)

        checks.append(_guarded(f"cylinder_m{m}_two_unbounded_components", two_components))
    checks.append(_guarded(
        "ascii_rendering_stable", lambda: render_ascii(cylinder(s.datum, 4, 1)) == render_ascii(cylinder(s.datum, 4, 1))
    ))
    return checks


SUITES: Dict[str, Callable[[VerificationContext], List[Check]]] = {
    "consistency": consistency_suite,
    "cartan": cartan_suite,
    "s-poly": s_poly_suite,
    "a1n": a1n_suite,
    "fixed-ring": fixed_ring_suite,
    "fiber": fiber_suite,
    "weight-modules": weight_suite,
    "diagram": diagram_suite,
}


def run_suites(
    only: Optional[Sequence[str]] = None,
    seed: int = None,
    window: int = None,
    bound: int = None,
    samples: Dict[str, int] = None,
) -> Dict[str, SuiteResult]:
    names = list(only) if only else list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite {unknown[0]!r}")
    ctx = VerificationContext(
        random.Random(settings.RANDOM_SEED if seed is None else seed),
        window or settings.DEFAULT_WINDOW,
        bound or settings.DEFAULT_BOUND,
        dict(samples or {}),
    )
    results = {}
    for name in names:
        start = time.perf_counter()
        result = SuiteResult(name, SUITES[name](ctx))
        elapsed = time.perf_counter() - start
        logger.info(f"suite {name}: {len(result.checks)} checks, passed={result.passed}, {elapsed:.2f}s")
        results[name] = result
    return results
