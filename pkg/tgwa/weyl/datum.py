"""
TGW data (R, sigma, t, mu): validity, consistency equations, Cartan type
and tensor products
"""

from dataclasses import dataclass, field as dc_field
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

from tgwa.algebra import linalg
from tgwa.algebra.basering import BasePoly, PolyRing, RingAut, apply_aut, commute_check, compose_auts, power_aut
from tgwa.algebra.scalars import Scalar
from tgwa.core.exceptions import BoundExceeded, FieldMismatch, NonCommutingSigmas, RingMismatch, ZeroT
from tgwa.core.logging import setup_logging

logger = setup_logging()

Pair = Tuple[int, int]


@dataclass(frozen=True)
class TGWDatum:
    """Defining data of a twisted generalized Weyl algebra; indices are 0-based"""

    ring: PolyRing
    sigma: Tuple[RingAut, ...]
    t: Tuple[BasePoly, ...]
    mu: Tuple[Tuple[Scalar, ...], ...]

    def __post_init__(self):
        n = len(self.sigma)
        if len(self.t) != n or len(self.mu) != n or any(len(row) != n for row in self.mu):
            raise ValueError(f"rank mismatch: {n} sigmas, {len(self.t)} t's, {len(self.mu)}x? mu")
        for s in self.sigma:
            if s.ring != self.ring:
                raise RingMismatch("sigma over another ring")
        for t in self.t:
            if t.ring != self.ring:
                raise RingMismatch("t over another ring")

    @property
    def n(self) -> int:
        return len(self.sigma)

    @property
    def field(self):
        return self.ring.field

    def sigma_power(self, degree: Sequence[int]) -> RingAut:
        """prod sigma_i^{d_i}"""
        result = RingAut.identity(self.ring)
        for s, d in zip(self.sigma, degree):
            if d:
                result = compose_auts(power_aut(s, d), result)
        return result

    def reindexed(self, order: Sequence[int]) -> "TGWDatum":
        return TGWDatum(
            self.ring,
            tuple(self.sigma[i] for i in order),
            tuple(self.t[i] for i in order),
            tuple(tuple(self.mu[i][j] for j in order) for i in order),
        )


@dataclass
class ConsistencyReport:
    cons1: Dict[Pair, bool] = dc_field(default_factory=dict)
    cons2: Dict[Tuple[int, int, int], bool] = dc_field(default_factory=dict)
    regular: bool = True
    mu_nonzero: bool = True

    @property
    def cons1_ok(self) -> bool:
        return all(self.cons1.values())

    @property
    def cons2_ok(self) -> bool:
        return all(self.cons2.values())

    @property
    def overall(self) -> bool:
        return self.regular and self.mu_nonzero and self.cons1_ok and self.cons2_ok

    def as_dict(self) -> dict:
        return {
            "regular": self.regular,
            "mu_nonzero": self.mu_nonzero,
            "cons1": {_label(k): v for k, v in sorted(self.cons1.items())},
            "cons2": {_label(k): v for k, v in sorted(self.cons2.items())},
            "overall": self.overall,
        }


def _label(indices) -> str:
    return ",".join(str(i + 1) for i in indices)


def cons1_holds(d: TGWDatum, i: int, j: int) -> bool:
    si, sj = d.sigma[i], d.sigma[j]
    lhs = apply_aut(si, apply_aut(sj, d.t[i] * d.t[j]))
    rhs = (apply_aut(si, d.t[i]) * apply_aut(sj, d.t[j])).scale(d.mu[i][j] * d.mu[j][i])
    return lhs == rhs


def cons2_holds(d: TGWDatum, i: int, j: int, k: int) -> bool:
    tj = d.t[j]
    lhs = tj * apply_aut(d.sigma[i], apply_aut(d.sigma[k], tj))
    rhs = apply_aut(d.sigma[i], tj) * apply_aut(d.sigma[k], tj)
    return lhs == rhs


def validate_datum(d: TGWDatum) -> ConsistencyReport:
    """Regularity plus both consistency equations, by exact polynomial identity"""
    for i in range(d.n):
        for j in range(i + 1, d.n):
            if not commute_check(d.sigma[i], d.sigma[j]):
                raise NonCommutingSigmas(f"sigma_{i + 1} and sigma_{j + 1} do not commute")
    zero_t = [i + 1 for i, t in enumerate(d.t) if t.is_zero()]
    if zero_t:
        raise ZeroT(f"t_{zero_t[0]} is zero")

    report = ConsistencyReport()
    report.mu_nonzero = all(not d.mu[i][j].is_zero() for i in range(d.n) for j in range(d.n) if i != j)
    for i in range(d.n):
        for j in range(d.n):
            if i != j:
                report.cons1[(i, j)] = cons1_holds(d, i, j)
    for i, j, k in permutations(range(d.n), 3):
        report.cons2[(i, j, k)] = cons2_holds(d, i, j, k)
    logger.debug(f"validated rank {d.n} datum: overall={report.overall}")
    return report


@dataclass
class CartanReport:
    n: int
    vdims: Dict[Pair, Optional[int]]
    minpolys: Dict[Pair, Tuple[Scalar, ...]]  # monic coefficients, low to high
    cartan: Optional[List[List[int]]]
    type_tag: str  # A1n | A2 | other | unknown
    gamma: Optional[List[List[Scalar]]] = None
    lambdas: Optional[Tuple[Scalar, Scalar]] = None
    etas: Optional[Tuple[Scalar, Scalar]] = None

    def minpoly_str(self, pair: Pair) -> str:
        coeffs = self.minpolys[pair]
        field = coeffs[0].field
        x = PolyRing.polynomial(["x"], field)
        poly = sum((x.monomial((k,), c) for k, c in enumerate(coeffs)), x.zero())
        return str(poly)

    def as_dict(self) -> dict:
        out = {
            "type": self.type_tag,
            "cartan": self.cartan,
            "dim_V": {_label(k): v for k, v in sorted(self.vdims.items())},
            "minimal_polynomials": {_label(k): self.minpoly_str(k) for k in sorted(self.minpolys)},
        }
        if self.gamma is not None:
            out["gamma"] = [[str(c) for c in row] for row in self.gamma]
        if self.lambdas is not None:
            out["lambda"] = [str(c) for c in self.lambdas]
            out["eta"] = [str(c) for c in self.etas]
        return out


def orbit_minpoly(aut: RingAut, f: BasePoly, bound: int) -> Optional[Tuple[Scalar, ...]]:
    """Monic minimal polynomial of aut on span{aut^k(f)}, or None past `bound`"""
    field = f.ring.field
    vectors = [dict(f.terms)]
    current = f
    for k in range(1, bound + 1):
        current = apply_aut(aut, current)
        coeffs = linalg.express_in_span(vectors, current.terms, field)
        if coeffs is not None:
            return tuple(-c for c in coeffs) + (field.one,)
        vectors.append(dict(current.terms))
    return None


def _pair_minpoly(d: TGWDatum, i: int, j: int, bound: int) -> Tuple[Scalar, ...]:
    poly = orbit_minpoly(d.sigma[i], d.t[j], bound)
    if poly is None:
        raise BoundExceeded(i + 1, j + 1, bound)
    return poly


def cartan_type(d: TGWDatum, bound: int = 16) -> CartanReport:
    vdims: Dict[Pair, Optional[int]] = {}
    minpolys: Dict[Pair, Tuple[Scalar, ...]] = {}
    for i in range(d.n):
        for j in range(d.n):
            if i == j:
                continue
            try:
                poly = _pair_minpoly(d, i, j, bound)
            except BoundExceeded as e:
                logger.warning(str(e))
                vdims[(i, j)] = None
                continue
            vdims[(i, j)] = len(poly) - 1
            minpolys[(i, j)] = poly

    if any(v is None for v in vdims.values()):
        return CartanReport(d.n, vdims, minpolys, None, "unknown")

    cartan = [[2 if i == j else 1 - vdims[(i, j)] for j in range(d.n)] for i in range(d.n)]
    report = CartanReport(d.n, vdims, minpolys, cartan, "other")
    if all(v == 1 for v in vdims.values()):
        report.type_tag = "A1n"
        field = d.field
        report.gamma = [
            [field.one if i == j else -minpolys[(i, j)][0] for j in range(d.n)] for i in range(d.n)
        ]
    elif d.n == 2 and vdims[(0, 1)] == 2 and vdims[(1, 0)] == 2:
        report.type_tag = "A2"
        p12, p21 = minpolys[(0, 1)], minpolys[(1, 0)]
        report.lambdas = (p12[1], p12[0])
        report.etas = (p21[1], p21[0])
    logger.debug(f"Cartan type {report.type_tag}: {cartan}")
    return report


def _joined_names(a: PolyRing, b: PolyRing) -> Tuple[str, ...]:
    names = a.names + b.names
    if len(set(names)) == len(names):
        return names
    return tuple(f"h{k + 1}" for k in range(len(names)))


def tensor_ring(a: PolyRing, b: PolyRing) -> PolyRing:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    return PolyRing(_joined_names(a, b), a.laurent + b.laurent, a.field)


def embed(f: BasePoly, target: PolyRing, offset: int) -> BasePoly:
    """Image of f under the inclusion of its ring as variables offset.. of target"""
    m = target.nvars
    k = f.ring.nvars
    terms = {}
    for e, c in f.terms.items():
        terms[(0,) * offset + e + (0,) * (m - offset - k)] = c
    return BasePoly(target, terms)


def tensor_auts(a: RingAut, b: RingAut, target: PolyRing = None) -> RingAut:
    """a (x) b acting blockwise on the joined ring"""
    target = target or tensor_ring(a.ring, b.ring)
    images = [embed(img, target, 0) for img in a.images]
    images += [embed(img, target, a.ring.nvars) for img in b.images]
    return RingAut(target, images)


def tensor_data(d: TGWDatum, e: TGWDatum) -> TGWDatum:
    ring = tensor_ring(d.ring, e.ring)
    ident_d = RingAut.identity(d.ring)
    ident_e = RingAut.identity(e.ring)
    sigma = tuple(tensor_auts(s, ident_e, ring) for s in d.sigma)
    sigma += tuple(tensor_auts(ident_d, s, ring) for s in e.sigma)
    t = tuple(embed(x, ring, 0) for x in d.t) + tuple(embed(x, ring, d.ring.nvars) for x in e.t)
    one = ring.field.one
    n, m = d.n, e.n
    mu = []
    for i in range(n + m):
        row = []
        for j in range(n + m):
            if i < n and j < n:
                row.append(d.mu[i][j])
            elif i >= n and j >= n:
                row.append(e.mu[i - n][j - n])
            else:
                row.append(one)
        mu.append(tuple(row))
    return TGWDatum(ring, sigma, t, tuple(mu))
