"""
Scenario files

A scenario is a YAML (or JSON) document describing a TGW datum, an optional
diagonal automorphism and the weight modules to examine. The structure is
validated by the pydantic models below; the expression strings inside are
parsed with the shared expression grammar, and every name listed under
`params` or `square_roots` may be used in any later expression.
"""

from dataclasses import dataclass, field as dc_field
from typing import Annotated, Any, Dict, List, Literal, Optional, Sequence, Tuple, Union

import yaml
from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, ValidationError, model_validator

from tgwa.algebra.basering import BasePoly, MaxIdealPoint, PolyRing, RingAut
from tgwa.algebra.expressions import parse_expression, zeta_orders
from tgwa.algebra.scalars import CycloField, Scalar, cyclotomic_field, lcm
from tgwa.core.exceptions import ExpressionSyntaxError, ScenarioSyntaxError, SchemaError
from tgwa.core.logging import setup_logging
from tgwa.modules.weight import ExplicitModule
from tgwa.weyl.datum import TGWDatum
from tgwa.weyl.fixedring import DiagonalAut, diagonal_aut

logger = setup_logging()

KNOWN_CHECKS = ("consistency", "cartan", "fixed-ring", "ore", "weight-modules", "restrict")


def _as_expression(value: Any) -> str:
    if isinstance(value, bool) or value is None:
        raise ValueError("expected an expression")
    if isinstance(value, (int, str)):
        return str(value)
    raise ValueError(f"expected an expression string, got {type(value).__name__}")


Expr = Annotated[str, BeforeValidator(_as_expression)]
Row = List[Expr]


def _square(rows: Sequence[Sequence[Any]], size: int) -> bool:
    return len(rows) == size and all(len(row) == size for row in rows)


# Pydantic models for the document structure
class FieldModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    conductor: Optional[int] = Field(default=None, ge=1)


class DatumModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    vars: List[str] = Field(min_length=1)
    laurent: Optional[List[bool]] = None
    sigma: List[Row] = Field(min_length=1)
    t: List[Expr]
    mu: Optional[List[Row]] = None

    @model_validator(mode="after")
    def check_shapes(self):
        n = len(self.sigma)
        if len(self.t) != n:
            raise ValueError(f"{n} sigma entries but {len(self.t)} t entries")
        for i, images in enumerate(self.sigma):
            if len(images) != len(self.vars):
                raise ValueError(f"sigma[{i}] has {len(images)} images for {len(self.vars)} variables")
        if self.laurent is not None and len(self.laurent) != len(self.vars):
            raise ValueError("one laurent flag per variable")
        if self.mu is not None and not _square(self.mu, n):
            raise ValueError(f"mu must be a {n}x{n} matrix")
        return self


class PhiModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    alpha: List[Expr] = Field(min_length=1)
    on_R: Union[Literal["identity"], List[Expr]] = "identity"
    residue_degree: Optional[int] = Field(default=None, ge=1)


class ModuleRequestModel(BaseModel):
    """Simple weight modules along the sigma-orbit of a base point"""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["orbit"]
    base: List[Expr]
    window: Optional[int] = Field(default=None, ge=1)


class ExplicitModuleModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["explicit"]
    name: str
    over: Literal["datum", "fixed"] = "datum"
    weights: List[Row] = Field(min_length=1)
    matrices: Dict[str, List[Row]]
    labels: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_shapes(self):
        size = len(self.weights)
        for name, rows in self.matrices.items():
            if not _square(rows, size):
                raise ValueError(f"matrix {name} must be {size}x{size}")
        if self.labels and len(self.labels) != size:
            raise ValueError(f"{len(self.labels)} labels for {size} basis vectors")
        return self


class RestrictionModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["restriction"]
    source: str
    summands: List[str] = Field(min_length=1)
    basis: List[Row]


class ExpectModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    type: Optional[str] = None
    cartan: Optional[List[List[int]]] = None
    minimal_polynomials: Optional[Dict[str, str]] = None
    consistent: Optional[bool] = None


ModuleEntry = Annotated[
    Union[ModuleRequestModel, ExplicitModuleModel, RestrictionModel], Field(discriminator="kind")
]


class ScenarioModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = "scenario"
    description: str = ""
    field: FieldModel = Field(default_factory=FieldModel)
    params: Dict[str, Expr] = Field(default_factory=dict)
    square_roots: Dict[str, Expr] = Field(default_factory=dict)
    datum: DatumModel
    phi: Optional[PhiModel] = None
    modules: List[ModuleEntry] = Field(default_factory=list)
    checks: List[str] = Field(default_factory=list)
    expect: Optional[ExpectModel] = None

    @model_validator(mode="after")
    def check_references(self):
        names = set(self.datum.vars)
        for key in list(self.params) + list(self.square_roots):
            if key in names or key == "zeta":
                raise ValueError(f"parameter {key!r} clashes with a variable or builtin name")
            names.add(key)
        if self.phi is not None:
            if len(self.phi.alpha) != len(self.datum.sigma):
                raise ValueError(f"phi.alpha has {len(self.phi.alpha)} entries for rank {len(self.datum.sigma)}")
            if self.phi.on_R != "identity" and len(self.phi.on_R) != len(self.datum.vars):
                raise ValueError("phi.on_R needs one scaling per variable")
        explicit = {m.name: m for m in self.modules if isinstance(m, ExplicitModuleModel)}
        if len(explicit) != sum(isinstance(m, ExplicitModuleModel) for m in self.modules):
            raise ValueError("explicit module names must be unique")
        for m in self.modules:
            if isinstance(m, ExplicitModuleModel) and m.over == "fixed" and self.phi is None:
                raise ValueError(f"module {m.name} lives over the fixed ring but no phi is given")
            if isinstance(m, RestrictionModel):
                if self.phi is None:
                    raise ValueError("a restriction needs phi")
                for ref in [m.source, *m.summands]:
                    if ref not in explicit:
                        raise ValueError(f"restriction refers to unknown module {ref!r}")
        unknown = [c for c in self.checks if c not in KNOWN_CHECKS]
        if unknown:
            raise ValueError(f"unknown check {unknown[0]!r}; known: {', '.join(KNOWN_CHECKS)}")
        return self


# Parsed scenario objects
@dataclass
class OrbitRequest:
    base: MaxIdealPoint
    window: Optional[int] = None


@dataclass
class NamedModule:
    name: str
    over: str
    module: ExplicitModule


@dataclass
class RestrictionRequest:
    source: str
    summands: List[str]
    basis: List[List[Scalar]]


@dataclass
class Scenario:
    model: ScenarioModel
    field: CycloField
    datum: TGWDatum
    phi: Optional[DiagonalAut] = None
    params: Dict[str, Scalar] = dc_field(default_factory=dict)
    orbits: List[OrbitRequest] = dc_field(default_factory=list)
    modules: Dict[str, NamedModule] = dc_field(default_factory=dict)
    restrictions: List[RestrictionRequest] = dc_field(default_factory=list)

    @property
    def name(self) -> str:
        return self.model.name

    @property
    def checks(self) -> List[str]:
        return self.model.checks

    @property
    def expect(self) -> Optional[ExpectModel]:
        return self.model.expect

    def schema(self) -> dict:
        return self.model.model_dump(mode="json", exclude_none=True)

    def scalar(self, text: str) -> Scalar:
        return parse_expression(text, self.field, self.params)

    def polynomial(self, text: str, ring: PolyRing = None) -> BasePoly:
        return _polynomial(ring or self.datum.ring, text, self.params)


def _polynomial(ring: PolyRing, text: str, params: Dict[str, Scalar]) -> BasePoly:
    variables: Dict[str, Any] = {k: ring.constant(v) for k, v in params.items()}
    variables.update(zip(ring.names, ring.gens()))
    return parse_expression(text, ring.field, variables, ring.constant)


# Diagnostics
def _path(loc: Sequence[Any]) -> str:
    out = ""
    for key in loc:
        out += f"[{key}]" if isinstance(key, int) else (f".{key}" if out else str(key))
    return out


def _locate(node: Optional[yaml.Node], loc: Sequence[Any]) -> Tuple[Optional[int], Optional[int]]:
    """1-based line and column of the YAML node at `loc`, or of its nearest ancestor"""
    if node is None:
        return None, None
    mark = node.start_mark
    for key in loc:
        child = None
        if isinstance(node, yaml.MappingNode):
            child = next((v for k, v in node.value if k.value == key), None)
            if child is None:
                # union tags in pydantic locations have no YAML counterpart
                continue
        elif isinstance(node, yaml.SequenceNode) and isinstance(key, int) and key < len(node.value):
            child = node.value[key]
        if child is None:
            break
        node = child
        mark = node.start_mark
    return mark.line + 1, mark.column + 1


def _strings(value: Any):
    if isinstance(value, str):
        yield value
    elif isinstance(value, dict):
        for v in value.values():
            yield from _strings(v)
    elif isinstance(value, list):
        for v in value:
            yield from _strings(v)


def scenario_conductor(model: ScenarioModel) -> int:
    """Declared conductor, else lcm of every zeta(N) order in the document"""
    orders = set()
    for text in _strings(model.model_dump(mode="json")):
        orders |= zeta_orders(text)
    natural = lcm(*orders) if orders else 1
    declared = model.field.conductor
    return lcm(declared, natural) if declared else natural


class _Builder:
    """Turns a validated ScenarioModel into module-level objects"""

    def __init__(self, model: ScenarioModel, root: Optional[yaml.Node], conductor: Optional[int]):
        self.model = model
        self.root = root
        natural = scenario_conductor(model)
        self.field = cyclotomic_field(lcm(natural, conductor) if conductor else natural)
        self.params: Dict[str, Scalar] = {}

    def _tag(self, e: ExpressionSyntaxError, loc: Sequence[Any]) -> ExpressionSyntaxError:
        line, _ = _locate(self.root, loc)
        where = _path(loc) if line is None else f"line {line}: {_path(loc)}"
        return e.at(where)

    def scalar(self, text: str, loc: Sequence[Any]) -> Scalar:
        try:
            return parse_expression(text, self.field, self.params)
        except ExpressionSyntaxError as e:
            raise self._tag(e, loc)

    def polynomial(self, ring: PolyRing, text: str, loc: Sequence[Any]) -> BasePoly:
        try:
            return _polynomial(ring, text, self.params)
        except ExpressionSyntaxError as e:
            raise self._tag(e, loc)

    def matrix(self, rows: List[List[str]], loc: Sequence[Any]) -> List[List[Scalar]]:
        return [[self.scalar(x, (*loc, r, c)) for c, x in enumerate(row)] for r, row in enumerate(rows)]

    def build(self) -> Scenario:
        m = self.model
        for key, text in m.params.items():
            self.params[key] = self.scalar(text, ("params", key))
        for key, text in m.square_roots.items():
            self.params[key] = self.scalar(text, ("square_roots", key)).sqrt()
        datum = self.datum(m.datum)
        scenario = Scenario(m, self.field, datum, params=dict(self.params))
        if m.phi is not None:
            scenario.phi = self.phi(m.phi, datum)
        for k, entry in enumerate(m.modules):
            loc = ("modules", k)
            if isinstance(entry, ModuleRequestModel):
                base = MaxIdealPoint(tuple(self.scalar(x, (*loc, "base", j)) for j, x in enumerate(entry.base)))
                scenario.orbits.append(OrbitRequest(base, entry.window))
            elif isinstance(entry, ExplicitModuleModel):
                weights = [MaxIdealPoint(tuple(row)) for row in self.matrix(entry.weights, (*loc, "weights"))]
                matrices = {
                    name: self.matrix(rows, (*loc, "matrices", name)) for name, rows in entry.matrices.items()
                }
                module = ExplicitModule(weights, matrices, list(entry.labels), dict(self.params))
                scenario.modules[entry.name] = NamedModule(entry.name, entry.over, module)
            else:
                basis = self.matrix(entry.basis, (*loc, "basis"))
                scenario.restrictions.append(RestrictionRequest(entry.source, list(entry.summands), basis))
        logger.info(f"parsed scenario {m.name}: rank {datum.n} over {datum.ring}, conductor {self.field.conductor}")
        return scenario

    def datum(self, dm: DatumModel) -> TGWDatum:
        laurent = tuple(dm.laurent) if dm.laurent is not None else (False,) * len(dm.vars)
        try:
            ring = PolyRing(tuple(dm.vars), laurent, self.field)
        except ValueError as e:
            line, column = _locate(self.root, ("datum", "vars"))
            raise SchemaError(str(e), "datum.vars", line, column)
        sigma = []
        for i, images in enumerate(dm.sigma):
            polys = [self.polynomial(ring, text, ("datum", "sigma", i, j)) for j, text in enumerate(images)]
            sigma.append(RingAut(ring, polys))
        t = [self.polynomial(ring, text, ("datum", "t", i)) for i, text in enumerate(dm.t)]
        n = len(sigma)
        if dm.mu is None:
            mu = tuple(tuple(self.field.one for _ in range(n)) for _ in range(n))
        else:
            mu = tuple(tuple(row) for row in self.matrix(dm.mu, ("datum", "mu")))
        return TGWDatum(ring, tuple(sigma), tuple(t), mu)

    def phi(self, pm: PhiModel, datum: TGWDatum) -> DiagonalAut:
        alpha = [self.scalar(x, ("phi", "alpha", i)) for i, x in enumerate(pm.alpha)]
        ring = datum.ring
        if pm.on_R == "identity":
            phi_r = RingAut.identity(ring)
        else:
            scalings = [self.scalar(x, ("phi", "on_R", j)) for j, x in enumerate(pm.on_R)]
            phi_r = RingAut(ring, [g.scale(c) for g, c in zip(ring.gens(), scalings)])
        return diagonal_aut(alpha, phi_r)


def build_scenario(raw: Any, root: Optional[yaml.Node] = None, conductor: int = None) -> Scenario:
    """Validate a decoded document and build the scenario objects

    `conductor` widens the ground field, e.g. so that two scenarios can be
    tensored.
    """
    if not isinstance(raw, dict):
        raise SchemaError("a scenario must be a mapping", "", *_locate(root, ()))
    try:
        model = ScenarioModel.model_validate(raw)
    except ValidationError as e:
        error = e.errors()[0]
        line, column = _locate(root, error["loc"])
        raise SchemaError(error["msg"], _path(error["loc"]), line, column)
    return _Builder(model, root, conductor).build()


def parse_scenario(text: str, conductor: int = None) -> Scenario:
    try:
        raw = yaml.safe_load(text)
        root = yaml.compose(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        problem = getattr(e, "problem", None) or str(e)
        if mark is None:
            raise ScenarioSyntaxError(problem)
        raise ScenarioSyntaxError(problem, mark.line + 1, mark.column + 1)
    return build_scenario(raw, root, conductor)


def datum_to_schema(d: TGWDatum) -> dict:
    """The `datum` section of a scenario describing d; parses back to an equal datum"""
    out: Dict[str, Any] = {"vars": list(d.ring.names)}
    if any(d.ring.laurent):
        out["laurent"] = list(d.ring.laurent)
    out["sigma"] = [[str(img) for img in s.images] for s in d.sigma]
    out["t"] = [str(t) for t in d.t]
    out["mu"] = [[str(c) for c in row] for row in d.mu]
    return out
