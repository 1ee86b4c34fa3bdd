"""
Fixed rings under diagonal automorphisms

phi acts by phi(X_i^+-) = alpha_i^{+-1} X_i^+- and by an automorphism phi|R
of the base ring. Under the coprimality hypothesis the fixed subalgebra is
again a TGWA with datum (R^phi, tau, s, nu), tau_i = sigma_i^{m_i},
s_i = prod_{k<m_i} sigma_i^{-k}(t_i), nu_ij = mu_ij^{m_i m_j}.
"""

from dataclasses import dataclass, field as dc_field
from functools import reduce
from math import gcd
from typing import Dict, Optional, Sequence, Tuple

from tgwa.algebra.basering import (
    BasePoly,
    FixedSubring,
    PolyRing,
    RingAut,
    apply_aut,
    aut_order,
    commute_check,
    fixed_subring,
    membership,
    power_aut,
)
from tgwa.algebra.scalars import Scalar, lcm, multiplicative_order
from tgwa.core.exceptions import (
    CoprimalityViolation,
    HypothesisViolation,
    InheritanceFailure,
    SingularAffineMap,
    UnsupportedFeature,
    ZeroT,
)
from tgwa.core.logging import setup_logging
from tgwa.weyl.datum import (
    CartanReport,
    ConsistencyReport,
    TGWDatum,
    cartan_type,
    tensor_auts,
    tensor_data,
    validate_datum,
)

logger = setup_logging()


def norm_element(sigma: RingAut, t: BasePoly, m: int) -> BasePoly:
    """prod_{k=0}^{m-1} sigma^{-k}(t)"""
    result = t.ring.one()
    for k in range(m):
        result = result * apply_aut(power_aut(sigma, -k), t)
    return result


@dataclass(frozen=True)
class DiagonalAut:
    alpha: Tuple[Scalar, ...]
    phi_r: RingAut
    orders: Tuple[Optional[int], ...]
    ell: Optional[int]

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def algebra_order(self) -> Optional[int]:
        """lcm(ell, m_1, ..., m_n), the order used for tensor coprimality"""
        if self.ell is None or any(m is None for m in self.orders):
            return None
        return lcm(self.ell, *self.orders)


def diagonal_aut(alpha: Sequence[Scalar], phi_r: RingAut, bound: int = None) -> DiagonalAut:
    alpha = tuple(alpha)
    orders = tuple(multiplicative_order(a) for a in alpha)
    bound = bound or 2 * phi_r.ring.field.conductor
    return DiagonalAut(alpha, phi_r, orders, aut_order(phi_r, bound))


def identity_aut(d: TGWDatum, alpha: Sequence[Scalar]) -> DiagonalAut:
    return diagonal_aut(alpha, RingAut.identity(d.ring))


@dataclass
class HypothesisReport:
    conditions: Dict[str, bool]
    orders: Tuple[Optional[int], ...]
    ell: Optional[int]

    @property
    def passed(self) -> bool:
        return all(self.conditions.values())

    def as_dict(self) -> dict:
        return {
            "conditions": dict(sorted(self.conditions.items())),
            "ell": self.ell,
            "orders": list(self.orders),
            "passed": self.passed,
        }


def validate_hypothesis(d: TGWDatum, a: DiagonalAut) -> HypothesisReport:
    if a.n != d.n:
        raise HypothesisViolation(f"alpha has {a.n} entries for a rank {d.n} datum")
    if a.phi_r.ring != d.ring:
        raise HypothesisViolation("phi|R acts on another ring")
    finite = a.ell is not None and all(m is not None for m in a.orders)
    coprime = False
    if finite:
        values = [a.ell, *a.orders]
        coprime = all(gcd(values[i], values[j]) == 1 for i in range(len(values)) for j in range(i + 1, len(values)))
    conditions = {
        "orders_finite": finite,
        "pairwise_coprime": coprime,
        "phi_commutes_with_sigma": all(commute_check(a.phi_r, s) for s in d.sigma),
        "phi_fixes_t": all(apply_aut(a.phi_r, t) == t for t in d.t),
    }
    report = HypothesisReport(conditions, a.orders, a.ell)
    logger.debug(f"hypothesis for alpha={[str(x) for x in a.alpha]}: {conditions}")
    return report


def hypothesis_a2(a: DiagonalAut) -> bool:
    return a.alpha[0] == 1 or a.alpha[1] == 1


@dataclass
class FixedRingResult:
    datum: TGWDatum
    fixed_subring: FixedSubring
    hypothesis: HypothesisReport
    consistency: ConsistencyReport
    cartan: CartanReport
    presented: Optional[TGWDatum] = None
    label: str = "A^phi"


def _presented_ring(ring: PolyRing, powers: Tuple[int, ...]) -> PolyRing:
    if all(e == 1 for e in powers):
        return ring
    names = ("u",) if ring.nvars == 1 else tuple(f"u{j + 1}" for j in range(ring.nvars))
    return PolyRing.polynomial(names, ring.field)


def to_presented(f: BasePoly, powers: Tuple[int, ...], target: PolyRing) -> Optional[BasePoly]:
    """f as a polynomial in u_j = h_j^{e_j}, or None when f is not of that form"""
    terms = {}
    for e, c in f.terms.items():
        if any(a % p for a, p in zip(e, powers)):
            return None
        terms[tuple(a // p for a, p in zip(e, powers))] = c
    return BasePoly(target, terms)


def presented_datum(d: TGWDatum, fixed: FixedSubring) -> Optional[TGWDatum]:
    """The fixed datum rewritten over k[u_1, ..., u_m] when R^phi is a polynomial ring in pure powers"""
    powers = fixed.pure_powers()
    if powers is None:
        return None
    target = _presented_ring(d.ring, powers)
    if target is d.ring:
        return d
    sigma = []
    for tau in d.sigma:
        images = [to_presented(apply_aut(tau, g), powers, target) for g in fixed.generators]
        if any(img is None for img in images):
            return None
        try:
            sigma.append(RingAut(target, images))
        except (SingularAffineMap, UnsupportedFeature) as e:
            logger.info(f"fixed ring has no affine presentation: {e}")
            return None
    t = [to_presented(s, powers, target) for s in d.t]
    if any(s is None for s in t):
        return None
    return TGWDatum(target, tuple(sigma), tuple(t), d.mu)


def fixed_datum(d: TGWDatum, a: DiagonalAut, bound: int = 16) -> FixedRingResult:
    hypothesis = validate_hypothesis(d, a)
    if not hypothesis.passed:
        failed = [k for k, v in hypothesis.conditions.items() if not v]
        raise HypothesisViolation(f"hypothesis fails: {', '.join(failed)}")

    fixed = fixed_subring(a.phi_r, a.ell)
    tau = tuple(power_aut(s, m) for s, m in zip(d.sigma, a.orders))
    s = tuple(norm_element(sig, t, m) for sig, t, m in zip(d.sigma, d.t, a.orders))
    nu = tuple(
        tuple(d.mu[i][j] ** (a.orders[i] * a.orders[j]) for j in range(d.n)) for i in range(d.n)
    )

    for i, si in enumerate(s):
        if not membership(fixed, si):
            raise InheritanceFailure(f"s_{i + 1} = {si} is not phi-invariant")
        for g in fixed.generators:
            if not membership(fixed, apply_aut(tau[i], g)):
                raise InheritanceFailure(f"tau_{i + 1} does not preserve R^phi")

    result_datum = TGWDatum(d.ring, tau, s, nu)
    try:
        consistency = validate_datum(result_datum)
    except ZeroT as e:
        raise InheritanceFailure(f"regularity not inherited: {e}")
    if validate_datum(d).cons1_ok and not consistency.cons1_ok:
        raise InheritanceFailure("cons1 not inherited")

    original = cartan_type(d, bound)
    label = "A^phi"
    if original.type_tag not in ("A1n", "A2") or (original.type_tag == "A2" and not hypothesis_a2(a)):
        label = "fixed-subalgebra datum"
    result = FixedRingResult(
        datum=result_datum,
        fixed_subring=fixed,
        hypothesis=hypothesis,
        consistency=consistency,
        cartan=cartan_type(result_datum, bound),
        presented=presented_datum(result_datum, fixed),
        label=label,
    )
    logger.info(f"fixed datum: orders={a.orders}, ell={a.ell}, cons2 reported as {consistency.cons2_ok}")
    return result


@dataclass
class FixedTypeReport:
    original: CartanReport
    fixed: CartanReport
    checks: Dict[str, bool] = dc_field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "original": self.original.as_dict(),
            "fixed": self.fixed.as_dict(),
            "checks": dict(sorted(self.checks.items())),
        }


def verify_fixed_type(d: TGWDatum, a: DiagonalAut, bound: int = 16) -> FixedTypeReport:
    result = fixed_datum(d, a, bound)
    original = cartan_type(d, bound)
    fixed = result.cartan
    report = FixedTypeReport(original, fixed)
    m = a.orders

    if original.type_tag == "A1n":
        report.checks["type_A1n"] = fixed.type_tag == "A1n"
        if fixed.type_tag == "A1n":
            report.checks["gamma_powers"] = all(
                fixed.gamma[i][j] == original.gamma[i][j] ** (m[i] * m[j])
                for i in range(d.n)
                for j in range(d.n)
                if i != j
            )
    elif original.type_tag == "A2":
        report.checks["valid_rank2"] = result.consistency.regular and result.consistency.cons1_ok

    for (i, j), vdim in original.vdims.items():
        wdim = fixed.vdims.get((i, j))
        finite = wdim is not None
        report.checks[f"W_{i + 1}{j + 1}_finite"] = finite
        if finite and vdim is not None:
            report.checks[f"W_{i + 1}{j + 1}_bound"] = wdim <= vdim ** m[j]

    failed = [k for k, v in report.checks.items() if not v]
    if failed:
        logger.error(f"fixed type verification failed: {failed}")
        raise InheritanceFailure(", ".join(failed))
    return report


def _combined_aut(factors: Sequence[Tuple[TGWDatum, DiagonalAut]]) -> DiagonalAut:
    alpha: Tuple[Scalar, ...] = ()
    phi = None
    for _, a in factors:
        alpha += a.alpha
        phi = a.phi_r if phi is None else tensor_auts(phi, a.phi_r)
    return diagonal_aut(alpha, phi)


def tensor_invariants(factors: Sequence[Tuple[TGWDatum, DiagonalAut]], bound: int = 16) -> FixedRingResult:
    """Fixed datum of the tensor product, checked against the tensor of the fixed data"""
    factors = list(factors)
    orders = [a.algebra_order for _, a in factors]
    if any(o is None for o in orders):
        raise HypothesisViolation("a factor automorphism has infinite order")
    for i in range(len(orders)):
        for j in range(i + 1, len(orders)):
            if gcd(orders[i], orders[j]) != 1:
                raise CoprimalityViolation(f"ord(phi_{i + 1}) = {orders[i]} and ord(phi_{j + 1}) = {orders[j]}")

    total = reduce(tensor_data, [d for d, _ in factors])
    combined = _combined_aut(factors)
    whole = fixed_datum(total, combined, bound)
    pieces = reduce(tensor_data, [fixed_datum(d, a, bound).datum for d, a in factors])
    if whole.datum != pieces:
        logger.error("fixed datum of the tensor product differs from the tensor of fixed data")
        raise InheritanceFailure("tensor invariants")
    return whole
