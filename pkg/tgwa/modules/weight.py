"""
Weight modules of rank one TGWAs and explicit finite-dimensional modules

Positions along an orbit are integers: position k is the point of
sigma^k(m) for the base point m. Simple modules on an infinite orbit are
supported on the intervals cut out by the breaks (positions where t
vanishes), with basis v_k and

    X+ v_k = v_{k+1},    X- v_k = t(point_{k-1}) v_{k-1},

each set to zero when the target leaves the support.
"""

from collections import defaultdict
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from tgwa.algebra import linalg
from tgwa.algebra.basering import BasePoly, FixedSubring, MaxIdealPoint, RingAut, apply_aut, point_action
from tgwa.algebra.scalars import CycloField, Scalar
from tgwa.core.exceptions import (
    FiniteOrbitUnsupported,
    HypothesisViolation,
    PositionOutsideSupport,
    RelationViolated,
    SpinInconclusive,
    UnsupportedFeature,
    UnsupportedResidueComputation,
)
from tgwa.core.logging import setup_logging
from tgwa.weyl.datum import TGWDatum
from tgwa.weyl.fixedring import DiagonalAut, norm_element, validate_hypothesis

logger = setup_logging()

Matrix = List[List[Scalar]]


def _rank_one(d: TGWDatum) -> RingAut:
    if d.n != 1:
        raise UnsupportedFeature(f"rank one datum expected, got rank {d.n}")
    return d.sigma[0]


class Orbit:
    """Sigma-orbit of a base point; points are computed lazily by position"""

    def __init__(self, base: MaxIdealPoint, generator: RingAut, period: Optional[int]):
        self.base = base
        self.generator = generator
        self.period = period
        self._inverse = generator.inverse()
        self._points: Dict[int, MaxIdealPoint] = {0: base}

    @property
    def kind(self) -> str:
        return "infinite" if self.period is None else f"finite({self.period})"

    @property
    def infinite(self) -> bool:
        return self.period is None

    def point(self, k: int) -> MaxIdealPoint:
        if self.period is not None:
            k %= self.period
        step = 1 if k > 0 else -1
        aut = self.generator if step > 0 else self._inverse
        j = k
        while j not in self._points:
            j -= step
        while j != k:
            self._points[j + step] = point_action(aut, self._points[j])
            j += step
        return self._points[k]

    def positions(self, window: int) -> List[int]:
        if self.period is not None:
            return list(range(self.period))
        return list(range(-window, window + 1))


def orbit_of(d: TGWDatum, p: MaxIdealPoint, window: int) -> Orbit:
    sigma = _rank_one(d)
    current = p
    for k in range(1, 2 * window + 1):
        current = point_action(sigma, current)
        if current == p:
            return Orbit(p, sigma, k)
    return Orbit(p, sigma, None)


@dataclass(frozen=True)
class BreakSet:
    breaks: Tuple[int, ...]
    window: int

    def as_list(self) -> List[int]:
        return list(self.breaks)


def breaks(d: TGWDatum, orbit: Orbit, window: int) -> BreakSet:
    t = d.t[0]
    found = tuple(k for k in orbit.positions(window) if t.evaluate(orbit.point(k).coords).is_zero())
    logger.debug(f"breaks of {t} within window {window}: {found}")
    return BreakSet(found, window)


def norm_breaks(f: BasePoly, orbit: Orbit, window: int) -> BreakSet:
    """Positions where f vanishes; used for s = prod sigma^{-k}(t)"""
    return BreakSet(tuple(k for k in orbit.positions(window) if f.evaluate(orbit.point(k).coords).is_zero()), window)


@dataclass(frozen=True)
class SimpleSupport:
    """Positions p with lower < p <= upper; None stands for -inf / +inf"""

    lower: Optional[int]
    upper: Optional[int]

    def __contains__(self, p: int) -> bool:
        return (self.lower is None or p > self.lower) and (self.upper is None or p <= self.upper)

    def positions(self, window: int) -> List[int]:
        return [p for p in range(-window, window + 1) if p in self]

    def __str__(self):
        lower = "-inf" if self.lower is None else str(self.lower)
        upper = "+inf)" if self.upper is None else f"{self.upper}]"
        return f"({lower}, {upper}"


def simple_supports(d: TGWDatum, orbit: Orbit, window: int) -> List[SimpleSupport]:
    if not orbit.infinite:
        raise FiniteOrbitUnsupported("simple supports are classified on infinite orbits only")
    cuts = breaks(d, orbit, window).breaks
    bounds: List[Optional[int]] = [None, *cuts, None]
    return [SimpleSupport(lo, hi) for lo, hi in zip(bounds, bounds[1:])]


@dataclass(frozen=True)
class Action:
    """X^sign v_source = coefficient * v_target (target None means zero)"""

    source: int
    target: Optional[int]
    coefficient: Scalar


def module_action(d: TGWDatum, orbit: Orbit, support: SimpleSupport, k: int, sign: int) -> Action:
    if k not in support:
        raise PositionOutsideSupport(f"position {k} is outside {support}")
    field = d.field
    target = k + sign
    if target not in support:
        return Action(k, None, field.zero)
    if sign > 0:
        return Action(k, target, field.one)
    return Action(k, target, d.t[0].evaluate(orbit.point(target).coords))


def check_simple_relations(d: TGWDatum, orbit: Orbit, support: SimpleSupport, window: int) -> Dict[str, bool]:
    """X-X+ = t and X+X- = sigma(t) on every weight vector of the support inside the window"""
    t = d.t[0]
    sigma_t = apply_aut(d.sigma[0], t)
    zero = d.field.zero
    ok_minus_plus = ok_plus_minus = True
    for k in support.positions(window):
        point = orbit.point(k).coords
        up = module_action(d, orbit, support, k, 1)
        value = zero if up.target is None else module_action(d, orbit, support, up.target, -1).coefficient
        ok_minus_plus &= value == t.evaluate(point)
        down = module_action(d, orbit, support, k, -1)
        value = zero if down.target is None else down.coefficient
        ok_plus_minus &= value == sigma_t.evaluate(point)
    return {"X-X+ = t": ok_minus_plus, "X+X- = sigma(t)": ok_plus_minus}


# Restriction to fixed rings

@dataclass
class RestrictedComponent:
    residue: int
    positions: List[int]
    lower: Optional[int]
    upper: Optional[int]
    multiplicity: int

    @property
    def empty(self) -> bool:
        return not self.positions

    def as_dict(self) -> dict:
        return {
            "residue": self.residue,
            "positions": self.positions,
            "interval": None if self.empty else str(SimpleSupport(self.lower, self.upper)),
            "multiplicity": self.multiplicity,
        }


@dataclass
class Restriction:
    support: SimpleSupport
    m: int
    s_breaks: BreakSet
    components: List[RestrictedComponent] = dc_field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "support": str(self.support),
            "m": self.m,
            "s_breaks": self.s_breaks.as_list(),
            "components": [c.as_dict() for c in self.components],
        }


def residue_degree(a: DiagonalAut, supplied: Optional[int] = None) -> int:
    """d_phi = [R/m : R^phi/m^phi] for the supported cases"""
    if a.phi_r.is_identity():
        return 1
    if supplied is None:
        raise UnsupportedResidueComputation("phi|R is not the identity; supply the residue degree")
    return supplied


def restrict_rank1(
    d: TGWDatum,
    a: DiagonalAut,
    orbit: Orbit,
    support: SimpleSupport,
    window: int,
    supplied_degree: Optional[int] = None,
) -> Restriction:
    """Decompose the restriction of a simple module along the T-orbits T.sigma^i(m), T = sigma^m"""
    if not orbit.infinite:
        raise FiniteOrbitUnsupported("restriction is decomposed on infinite orbits only")
    hypothesis = validate_hypothesis(d, a)
    if not hypothesis.passed:
        raise HypothesisViolation(str(hypothesis.conditions))
    m = a.orders[0]
    multiplicity = residue_degree(a, supplied_degree)
    s = norm_element(d.sigma[0], d.t[0], m)
    s_breaks = norm_breaks(s, orbit, window)
    result = Restriction(support, m, s_breaks)
    in_support = support.positions(window)
    for i in range(m):
        positions = [p for p in in_support if p % m == i]
        component = RestrictedComponent(i, positions, None, None, multiplicity)
        if positions:
            if support.lower is not None:
                component.lower = positions[0] - m
            if support.upper is not None:
                component.upper = positions[-1]
            _check_interval(component, s_breaks, window, m)
        result.components.append(component)
    logger.info(f"restriction of {support} with m={m}: {[len(c.positions) for c in result.components]} positions per residue")
    return result


def _check_interval(component: RestrictedComponent, s_breaks: BreakSet, window: int, m: int):
    """A restricted support must be an interval between consecutive breaks of s"""
    cuts = set(s_breaks.breaks)
    inner = component.positions[:-1] if component.upper is not None else component.positions
    if any(p in cuts for p in inner):
        raise RelationViolated(f"component {component.residue} straddles a break of s")
    if component.upper is not None and component.upper not in cuts:
        raise RelationViolated(f"upper end {component.upper} of component {component.residue} is not a break of s")
    if component.lower is not None and component.lower >= -window and component.lower not in cuts:
        raise RelationViolated(f"lower end {component.lower} of component {component.residue} is not a break of s")


def projection(fixed: FixedSubring, point: MaxIdealPoint) -> Tuple[Scalar, ...]:
    """pi(m): the point of R^phi below m, as generator values"""
    return tuple(g.evaluate(point.coords) for g in fixed.generators)


def projection_injective(fixed: FixedSubring, orbit: Orbit, window: int) -> bool:
    seen = set()
    for k in orbit.positions(window):
        key = projection(fixed, orbit.point(k))
        if key in seen:
            return False
        seen.add(key)
    return True


def phi_orbit(phi_r: RingAut, point: MaxIdealPoint, bound: int = 64) -> List[MaxIdealPoint]:
    out = [point]
    current = point_action(phi_r, point)
    while current != point and len(out) < bound:
        out.append(current)
        current = point_action(phi_r, current)
    return out


def phi_fiber(phi_r: RingAut, fixed: FixedSubring, point: MaxIdealPoint, candidates: Sequence[MaxIdealPoint]) -> bool:
    """The phi-orbit of point equals the fiber of pi over pi(point) among the candidates"""
    target = projection(fixed, point)
    fiber = {c for c in candidates if projection(fixed, c) == target}
    return fiber == set(phi_orbit(phi_r, point))


def weight_space_accounting(
    weights: Sequence[MaxIdealPoint], phi_r: RingAut, fixed: FixedSubring
) -> Dict[Tuple[Scalar, ...], Tuple[int, int]]:
    """For each R^phi-weight: (dim of the restricted weight space, sum over the phi-orbit)"""
    counts: Dict[MaxIdealPoint, int] = defaultdict(int)
    for w in weights:
        counts[w] += 1
    restricted: Dict[Tuple[Scalar, ...], int] = defaultdict(int)
    representative: Dict[Tuple[Scalar, ...], MaxIdealPoint] = {}
    for w in weights:
        key = projection(fixed, w)
        restricted[key] += 1
        representative.setdefault(key, w)
    out = {}
    for key, dim in restricted.items():
        total = sum(counts.get(p, 0) for p in phi_orbit(phi_r, representative[key]))
        out[key] = (dim, total)
    return out


# Explicit modules

@dataclass
class ExplicitModule:
    """Finite-dimensional module given by weights and generator matrices

    Matrices are row-major with column j the image of basis vector j.
    Generator names are X+ / X- in rank one and X1+, X1-, ... otherwise.
    """

    weights: List[MaxIdealPoint]
    matrices: Dict[str, Matrix]
    labels: List[str] = dc_field(default_factory=list)
    params: Dict[str, Scalar] = dc_field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.weights)

    def h_action(self, f: BasePoly) -> Matrix:
        field = f.ring.field
        out = linalg.zeros(field, self.dim, self.dim)
        for k, w in enumerate(self.weights):
            out[k][k] = f.evaluate(w.coords)
        return out

    def generator_names(self, n: int) -> List[Tuple[str, str]]:
        if n == 1 and "X+" in self.matrices:
            return [("X+", "X-")]
        return [(f"X{i + 1}+", f"X{i + 1}-") for i in range(n)]


def _equal(a: Matrix, b: Matrix) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def _scaled(a: Matrix, c: Scalar) -> Matrix:
    return [[x * c for x in row] for row in a]


@dataclass
class ModuleReport:
    relations: Dict[str, bool]
    simple: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return all(self.relations.values()) and self.simple is not False

    def as_dict(self) -> dict:
        return {"relations": dict(sorted(self.relations.items())), "simple": self.simple, "passed": self.passed}


def module_relations(mod: ExplicitModule, d: TGWDatum) -> Dict[str, bool]:
    field = d.field
    size = mod.dim
    for name, mat in mod.matrices.items():
        if len(mat) != size or any(len(row) != size for row in mat):
            raise UnsupportedFeature(f"matrix {name} is not {size}x{size}")
    names = mod.generator_names(d.n)
    gens = d.ring.gens()
    out: Dict[str, bool] = {}
    for i, (plus, minus) in enumerate(names):
        xp, xm = mod.matrices[plus], mod.matrices[minus]
        t = d.t[i]
        out[f"{minus}{plus} = t{i + 1}"] = _equal(linalg.matmul(xm, xp, field), mod.h_action(t))
        out[f"{plus}{minus} = sigma{i + 1}(t{i + 1})"] = _equal(
            linalg.matmul(xp, xm, field), mod.h_action(apply_aut(d.sigma[i], t))
        )
        inverse = d.sigma[i].inverse()
        for name, g in zip(d.ring.names, gens):
            out[f"{plus}{name} = sigma{i + 1}({name}){plus}"] = _equal(
                linalg.matmul(xp, mod.h_action(g), field),
                linalg.matmul(mod.h_action(apply_aut(d.sigma[i], g)), xp, field),
            )
            out[f"{minus}{name} = sigma{i + 1}^-1({name}){minus}"] = _equal(
                linalg.matmul(xm, mod.h_action(g), field),
                linalg.matmul(mod.h_action(apply_aut(inverse, g)), xm, field),
            )
    for i, (plus_i, _) in enumerate(names):
        for j, (_, minus_j) in enumerate(names):
            if i != j:
                lhs = linalg.matmul(mod.matrices[plus_i], mod.matrices[minus_j], field)
                rhs = _scaled(linalg.matmul(mod.matrices[minus_j], mod.matrices[plus_i], field), d.mu[i][j])
                out[f"{plus_i}{minus_j} = mu{i + 1}{j + 1} {minus_j}{plus_i}"] = _equal(lhs, rhs)
    return out


def _span_closure(start: List[Scalar], operators: Sequence[Matrix], field: CycloField) -> int:
    basis = [start]
    frontier = [start]
    while frontier:
        v = frontier.pop()
        for op in operators:
            image = [sum((op[r][c] * v[c] for c in range(len(v))), field.zero) for r in range(len(op))]
            if linalg.rank(basis + [image]) > len(basis):
                basis.append(image)
                frontier.append(image)
    return len(basis)


def is_simple(mod: ExplicitModule, field: CycloField) -> bool:
    """Spin every basis vector; needs one-dimensional weight spaces with distinct weights"""
    if len(set(mod.weights)) != mod.dim:
        raise SpinInconclusive("weight spaces are not one-dimensional")
    operators = list(mod.matrices.values())
    for k in range(mod.dim):
        e = [field.one if j == k else field.zero for j in range(mod.dim)]
        if _span_closure(e, operators, field) < mod.dim:
            return False
    return True


def verify_explicit_module(mod: ExplicitModule, d: TGWDatum, check_simple: bool = True) -> ModuleReport:
    report = ModuleReport(module_relations(mod, d))
    failed = [name for name, ok in report.relations.items() if not ok]
    if failed:
        logger.error(f"module relation failed: {failed[0]}")
        raise RelationViolated(failed[0])
    if check_simple:
        report.simple = is_simple(mod, d.field)
    return report


def hom_dimension(a: ExplicitModule, b: ExplicitModule, d: TGWDatum) -> int:
    """dim Hom(a, b): solutions T of T X_a = X_b T for every generator and every h_j"""
    field = d.field
    na, nb = a.dim, b.dim
    pairs = [(a.matrices[k], b.matrices[k]) for k in a.matrices]
    pairs += [(a.h_action(g), b.h_action(g)) for g in d.ring.gens()]
    rows = []
    # unknown T[r][c] sits at index r * na + c
    for xa, xb in pairs:
        for r in range(nb):
            for c in range(na):
                row = [field.zero] * (na * nb)
                for k in range(na):
                    row[r * na + k] = row[r * na + k] + xa[k][c]
                for k in range(nb):
                    row[k * na + c] = row[k * na + c] - xb[r][k]
                rows.append(row)
    return len(linalg.nullspace(rows, field, na * nb))


def change_basis(mod: ExplicitModule, columns: Matrix, weights: Sequence[MaxIdealPoint], field: CycloField,
                 generator_map: Dict[str, str] = None) -> ExplicitModule:
    """The module in the basis whose vectors are the columns of `columns`"""
    inverse = linalg.inverse(columns, field)
    if inverse is None:
        raise UnsupportedFeature("change of basis matrix is singular")
    generator_map = generator_map or {k: k for k in mod.matrices}
    matrices = {
        new: linalg.matmul(linalg.matmul(inverse, mod.matrices[old], field), columns, field)
        for old, new in generator_map.items()
    }
    return ExplicitModule(list(weights), matrices)


def direct_sum(a: ExplicitModule, b: ExplicitModule, field: CycloField) -> ExplicitModule:
    size = a.dim + b.dim
    matrices = {}
    for name in a.matrices:
        m = linalg.zeros(field, size, size)
        for r in range(a.dim):
            for c in range(a.dim):
                m[r][c] = a.matrices[name][r][c]
        for r in range(b.dim):
            for c in range(b.dim):
                m[a.dim + r][a.dim + c] = b.matrices[name][r][c]
        matrices[name] = m
    return ExplicitModule(a.weights + b.weights, matrices, a.labels + b.labels)


def same_module(a: ExplicitModule, b: ExplicitModule) -> bool:
    return a.weights == b.weights and a.matrices.keys() == b.matrices.keys() and all(
        _equal(a.matrices[k], b.matrices[k]) for k in a.matrices
    )


def _matrix_power(a: Matrix, k: int, field: CycloField) -> Matrix:
    out = linalg.identity(field, len(a))
    for _ in range(k):
        out = linalg.matmul(out, a, field)
    return out


@dataclass
class ExplicitRestriction:
    restricted: ExplicitModule
    checks: Dict[str, bool]
    hom: Dict[str, int]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict:
        return {"checks": dict(sorted(self.checks.items())), "hom_dimensions": dict(sorted(self.hom.items()))}


def restrict_explicit(
    mod: ExplicitModule,
    d: TGWDatum,
    a: DiagonalAut,
    fixed: FixedSubring,
    target: TGWDatum,
    columns: Matrix,
    summands: Sequence[Tuple[str, ExplicitModule]],
) -> ExplicitRestriction:
    """Restrict a module of A to A^phi and match it against a direct sum

    The generators of A^phi act by (X_i^+-)^{m_i}; `columns` expresses the
    basis of the sum of `summands` (in order) in the basis of `mod`, and
    `target` is the fixed datum the summands are modules over.
    """
    field = d.field
    names = mod.generator_names(d.n)
    powered: Dict[str, Matrix] = {}
    for (plus, minus), m in zip(names, a.orders):
        powered[plus] = _matrix_power(mod.matrices[plus], m, field)
        powered[minus] = _matrix_power(mod.matrices[minus], m, field)
    restricted = ExplicitModule([MaxIdealPoint(projection(fixed, w)) for w in mod.weights], powered, list(mod.labels))

    total = summands[0][1]
    for _, s in summands[1:]:
        total = direct_sum(total, s, field)
    checks: Dict[str, bool] = {}
    if len(columns) != mod.dim or any(len(row) != total.dim for row in columns):
        raise UnsupportedFeature(f"basis must be a {mod.dim}x{total.dim} matrix")
    checks["basis_is_weight_basis"] = all(
        restricted.weights[r] == total.weights[c]
        for c in range(total.dim)
        for r in range(mod.dim)
        if not columns[r][c].is_zero()
    )
    try:
        changed = change_basis(restricted, columns, total.weights, field)
        checks["decomposes_as_direct_sum"] = same_module(changed, total)
    except UnsupportedFeature:
        checks["decomposes_as_direct_sum"] = False
    hom: Dict[str, int] = {}
    for k, (name, s) in enumerate(summands):
        checks[f"{name}_simple"] = verify_explicit_module(s, target).simple is True
        for other_name, other in summands[k + 1:]:
            dim = hom_dimension(s, other, target)
            hom[f"Hom({name}, {other_name})"] = dim
            checks[f"Hom({name}, {other_name}) = 0"] = dim == 0
    accounting = weight_space_accounting(mod.weights, a.phi_r, fixed)
    checks["weight_space_accounting"] = all(dim == total_dim for dim, total_dim in accounting.values())
    checks["phi_orbits_are_fibers"] = all(phi_fiber(a.phi_r, fixed, w, mod.weights) for w in mod.weights)
    failed = [k for k, v in checks.items() if not v]
    if failed:
        logger.error(f"restriction checks failed: {failed}")
    return ExplicitRestriction(restricted, checks, hom)


# Rendering

_GLYPHS = [("(*)", "( )"), ("/*\\", "/ \\"), ("[*]", "[ ]")]


def _glyph(residue: int, hollow: bool) -> str:
    if residue < len(_GLYPHS):
        return _GLYPHS[residue][1 if hollow else 0]
    return f"{{{residue}}}" if hollow else f"<{residue}>"


def render_orbit(window: int, m: int, s_breaks: BreakSet, support: Optional[SimpleSupport] = None) -> str:
    """One row of glyphs over positions -window..window

    Glyph family by residue mod m (circle, triangle, square, then numbered),
    hollow on breaks of s, '.' outside the support.
    """
    cuts = set(s_breaks.breaks)
    cells = []
    for p in range(-window, window + 1):
        if support is not None and p not in support:
            cells.append(" . ")
        else:
            cells.append(_glyph(p % m, p in cuts))
    return " ".join(cells).rstrip() + f"\npositions {-window}..{window}, m={m}\n"
