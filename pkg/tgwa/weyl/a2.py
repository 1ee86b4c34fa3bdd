"""
Type A2 machinery

S_a(q, beta) polynomials with their identities and nonvanishing criteria,
the rewriting coefficients for x^a y x^c, and exact arithmetic in the
localized rank 2 fiber algebra over k(h), where every Z^2-degree carries a
single normal monomial E(d) = (X2 part)(X1 part).
"""

from dataclasses import dataclass
from itertools import product as cartesian
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from tgwa.algebra.basering import RingAut, compose_auts
from tgwa.algebra.rational import RationalFunction, parse_rational
from tgwa.algebra.scalars import Scalar
from tgwa.core.exceptions import (
    DenominatorVanishes,
    ProfileMismatch,
    RelationViolated,
    RingMismatch,
    UnsupportedFeature,
    ZeroLambda2,
)
from tgwa.core.logging import setup_logging
from tgwa.weyl.a1n import letter_str, parse_word
from tgwa.weyl.datum import TGWDatum, cartan_type
from tgwa.weyl.fixedring import norm_element

logger = setup_logging()

Degree = Tuple[int, int]


# S_a(q, beta)

def s_poly(a: int, q: Scalar, beta: Scalar) -> Scalar:
    """S_a by the recurrence S_{a+1} = q S_a - beta S_{a-1}, S_0 = 1, S_1 = q"""
    field = q.field
    if a == 0:
        return field.one
    prev, cur = field.one, q
    for _ in range(a - 1):
        prev, cur = cur, q * cur - beta * prev
    return cur


def s_poly_closed(a: int, q: Scalar, beta: Scalar) -> Scalar:
    total = q.field.zero
    for i in range(a // 2 + 1):
        term = q ** (a - 2 * i) * beta ** i * comb(a - i, i)
        total = total + (-term if i % 2 else term)
    return total


def s_identity_check(a: int, c: int, q: Scalar, beta: Scalar) -> bool:
    """beta S_{c-2} S_{a-1} + S_{a+c-1} = S_a S_{c-1}"""
    lhs = beta * s_poly(c - 2, q, beta) * s_poly(a - 1, q, beta) + s_poly(a + c - 1, q, beta)
    return lhs == s_poly(a, q, beta) * s_poly(c - 1, q, beta)


def chebyshev_check(a: int, q: Scalar, beta: Scalar) -> bool:
    """S_a(q, beta)^2 = beta^a U_a(q / (2 sqrt(beta)))^2; beta must be a square"""
    root = beta.sqrt()
    x = q / (root * 2)
    value = q.field.zero
    for c in sympy.chebyshevu_poly(a, polys=True).all_coeffs():
        value = value * x + int(c)
    return s_poly(a, q, beta) ** 2 == beta ** a * value ** 2


@dataclass(frozen=True)
class NonvanishingVerdict:
    kind: str  # ProvenAllNonzero | NonzeroUpTo | ZeroAt
    a: Optional[int] = None

    def __str__(self):
        return self.kind if self.a is None else f"{self.kind}({self.a})"


def s_nonvanishing(lambda1: Scalar, lambda2: Scalar, a_max: int) -> NonvanishingVerdict:
    """Whether S_a(-lambda1, lambda2) vanishes for some a >= 0

    Real split p12 with z1 != -z2 (that is lambda1 != 0) proves nonvanishing;
    anything else falls back to direct evaluation up to a_max.
    """
    if lambda2.is_zero():
        raise ZeroLambda2("lambda_2 must be nonzero")
    if lambda1.is_rational() and lambda2.is_rational():
        l1, l2 = lambda1.to_fraction(), lambda2.to_fraction()
        if l1 * l1 - 4 * l2 >= 0 and l1 != 0:
            return NonvanishingVerdict("ProvenAllNonzero")
    q = -lambda1
    for a in range(a_max + 1):
        if s_poly(a, q, lambda2).is_zero():
            return NonvanishingVerdict("ZeroAt", a)
    return NonvanishingVerdict("NonzeroUpTo", a_max)


def rewrite_coeffs(a: int, c: int, q: Scalar, beta: Scalar) -> Tuple[Scalar, Scalar]:
    """(c1, c2) with x^a y x^c = c1 x^{a+c} y + c2 y x^{a+c}"""
    denominator = s_poly(a + c - 1, q, beta)
    if denominator.is_zero():
        raise DenominatorVanishes(a + c - 1)
    first = s_poly(a - 1, q, beta) / denominator
    second = beta ** a * s_poly(c - 1, q, beta) / denominator
    return first, second


# Fiber algebra

class FiberProfile:
    """Rank 2 datum over k[h] with affine sigma_1, sigma_2, read over k(h)"""

    def __init__(self, datum: TGWDatum):
        ring = datum.ring
        if datum.n != 2:
            raise UnsupportedFeature(f"fiber algebras have rank 2, not {datum.n}")
        if ring.nvars != 1 or any(ring.laurent):
            raise RingMismatch("fiber algebras need the univariate polynomial ring k[h]")
        self.datum = datum
        self.ring = ring
        self.sigma = datum.sigma
        self.t = tuple(RationalFunction(t) for t in datum.t)
        self.mu12 = datum.mu[0][1]
        self.mu21 = datum.mu[1][0]
        self._powers: Dict[Degree, RingAut] = {}
        s1, s2 = self.sigma
        t1 = self.t[0]
        inv1, inv2 = s1.inverse(), s2.inverse()
        # X1^e X2^f = X2^f X1^e * exchange[(e, f)]
        self.exchange = {
            (1, 1): t1.apply(inv2) / t1 * self.mu21,
            (-1, -1): t1.apply(compose_auts(s2, s1)) / t1.apply(s1) / self.mu12,
            (1, -1): RationalFunction(ring.constant(self.mu12)),
            (-1, 1): RationalFunction(ring.constant(self.mu21.inverse())),
        }
        self._inverses = (inv1, inv2)

    @property
    def field(self):
        return self.ring.field

    def power(self, d: Degree) -> RingAut:
        """sigma_1^{d_1} sigma_2^{d_2}"""
        d = tuple(d)
        if d not in self._powers:
            self._powers[d] = self.datum.sigma_power(d)
        return self._powers[d]

    def transport(self, index: int, sign: int, r: RationalFunction) -> RationalFunction:
        """r' with r X_i^sign = X_i^sign r'"""
        aut = self._inverses[index] if sign > 0 else self.sigma[index]
        return r.apply(aut)

    def contraction(self, index: int, sign: int) -> RationalFunction:
        """X_i^-X_i^+ = t_i and X_i^+X_i^- = sigma_i(t_i); sign is the right-hand letter"""
        t = self.t[index]
        return t if sign > 0 else t.apply(self.sigma[index])

    # constructors
    def element(self, terms: Dict[Degree, RationalFunction]) -> "FiberElement":
        return FiberElement(self, terms)

    def coefficient(self, r) -> RationalFunction:
        if isinstance(r, RationalFunction):
            return r
        if hasattr(r, "ring"):
            return RationalFunction(r)
        return RationalFunction(self.ring.constant(r))

    def scalar(self, r) -> "FiberElement":
        return FiberElement(self, {(0, 0): self.coefficient(r)})

    def one(self) -> "FiberElement":
        return self.scalar(1)

    def monomial(self, d: Degree, coeff=1) -> "FiberElement":
        return FiberElement(self, {tuple(d): self.coefficient(coeff)})

    def generator(self, index: int, sign: int) -> "FiberElement":
        d = [0, 0]
        d[index] = sign
        return self.monomial(tuple(d))

    def word(self, tokens: Sequence) -> "FiberElement":
        result = self.one()
        for token in tokens:
            if isinstance(token, tuple):
                result = result * self.generator(*token)
            else:
                result = result * self.scalar(token)
        return result

    def parse(self, text: str) -> "FiberElement":
        return self.word(parse_word(text, 2, lambda chunk: parse_rational(self.ring, chunk)))


def fiber_profile(d: TGWDatum) -> FiberProfile:
    return FiberProfile(d)


class FiberElement:
    """Finite sum of E(d) * r_d with right coefficients r_d in k(h)"""

    __slots__ = ("profile", "terms")

    def __init__(self, profile: FiberProfile, terms: Dict[Degree, RationalFunction]):
        self.profile = profile
        self.terms: Dict[Degree, RationalFunction] = {tuple(d): c for d, c in terms.items() if not c.is_zero()}

    def _coerce(self, other) -> "FiberElement":
        if isinstance(other, FiberElement):
            if other.profile is not self.profile:
                raise ProfileMismatch("elements of different fiber algebras")
            return other
        return self.profile.scalar(other)

    def __add__(self, other):
        o = self._coerce(other)
        terms = dict(self.terms)
        for d, c in o.terms.items():
            terms[d] = terms[d] + c if d in terms else c
        return FiberElement(self.profile, terms)

    __radd__ = __add__

    def __neg__(self):
        return FiberElement(self.profile, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        return fiber_multiply(self, self._coerce(other))

    def __rmul__(self, other):
        return fiber_multiply(self._coerce(other), self)

    def __pow__(self, k: int):
        result = self.profile.one()
        for _ in range(k):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, d: Degree) -> RationalFunction:
        return self.terms.get(tuple(d), self.profile.coefficient(0))

    def __eq__(self, other):
        if isinstance(other, FiberElement):
            return self.profile is other.profile and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for d in sorted(self.terms):
            coeff = self.terms[d]
            mono = fiber_monomial_str(d)
            if not mono:
                parts.append(f"({coeff})")
            elif coeff == 1:
                parts.append(mono)
            else:
                parts.append(f"{mono}*({coeff})")
        return " + ".join(parts)

    def __repr__(self):
        return f"FiberElement({self})"


def fiber_monomial_str(d: Degree) -> str:
    parts = []
    for index in (1, 0):
        k = d[index]
        if k:
            name = letter_str((index, 1 if k > 0 else -1))
            parts.append(name if abs(k) == 1 else f"{name}^{abs(k)}")
    return "*".join(parts)


def _append_letter(p: FiberProfile, d: Degree, index: int, sign: int) -> Tuple[Degree, RationalFunction]:
    """E(d) X_index^sign = E(d') * kappa"""
    one = p.coefficient(1)
    d1, d2 = d
    if index == 0:
        kappa = p.contraction(0, sign) if d1 * sign < 0 else one
        return (d1 + sign, d2), kappa
    # move the X2 letter left past Z1^{d1}
    g = one
    if d1:
        eps = 1 if d1 > 0 else -1
        f = p.exchange[(eps, sign)]
        for _ in range(abs(d1)):
            g = p.transport(0, eps, g) * f
    kappa2 = p.contraction(1, sign) if d2 * sign < 0 else one
    kappa = kappa2.apply(p.power((-d1, 0))) * g
    return (d1, d2 + sign), kappa


def _letters(d: Degree) -> List[Tuple[int, int]]:
    """Letters of E(d), left to right"""
    out = [(1, 1 if d[1] > 0 else -1)] * abs(d[1])
    out += [(0, 1 if d[0] > 0 else -1)] * abs(d[0])
    return out


def monomial_product(p: FiberProfile, d: Degree, e: Degree) -> RationalFunction:
    """c with E(d) E(e) = E(d+e) c"""
    coeff = p.coefficient(1)
    current = tuple(d)
    for index, sign in _letters(e):
        current, kappa = _append_letter(p, current, index, sign)
        coeff = kappa * p.transport(index, sign, coeff)
    return coeff


def fiber_multiply(x: FiberElement, y: FiberElement) -> FiberElement:
    if x.profile is not y.profile:
        raise ProfileMismatch("elements of different fiber algebras")
    p = x.profile
    terms: Dict[Degree, RationalFunction] = {}
    for d, f in x.terms.items():
        for e, g in y.terms.items():
            total = (d[0] + e[0], d[1] + e[1])
            # f E(e) = E(e) sigma^{-e}(f)
            c = monomial_product(p, d, e) * f.apply(p.power((-e[0], -e[1]))) * g
            terms[total] = terms[total] + c if total in terms else c
    return FiberElement(p, terms)


# Centralizing element

def centralizing_element(p: FiberProfile) -> FiberElement:
    """C = X2+ X1+ - X1+ X2+"""
    x1, x2 = p.generator(0, 1), p.generator(1, 1)
    return x2 * x1 - x1 * x2


def centralizes(p: FiberProfile, c: FiberElement) -> bool:
    generators = [p.generator(i, s) for i in (0, 1) for s in (1, -1)]
    generators.append(p.scalar(p.ring.gen(0)))
    return all((c * g - g * c).is_zero() for g in generators)


def c_power_closed(p: FiberProfile, k: int) -> FiberElement:
    """(X2+)^k (X1+)^k / prod_{j<k} sigma_1^{-j}(t_1)"""
    s = norm_element(p.sigma[0], p.datum.t[0], k)
    return p.monomial((k, k), RationalFunction(p.ring.one(), s))


@dataclass
class CPowerResult:
    k: int
    power: FiberElement
    closed_form: FiberElement
    fixed_element: Optional[FiberElement] = None

    def as_dict(self) -> dict:
        out = {"k": self.k, "C^k": str(self.power), "closed_form": str(self.closed_form)}
        if self.fixed_element is not None:
            out["C^phi"] = str(self.fixed_element)
        return out


def c_power(p: FiberProfile, k: int, m: int = None) -> CPowerResult:
    """C^k by repeated multiplication, checked against the closed form

    With m, also C^phi = (X2+)^m (X1+)^m / s_1 with s_1 taken from the fixed
    ring data, checked against C^m.
    """
    if k < 1:
        raise ValueError("k must be positive")
    c = centralizing_element(p)
    power = c ** k
    closed = c_power_closed(p, k)
    if power != closed:
        logger.error(f"C^{k} = {power} differs from {closed}")
        raise RelationViolated(f"C^{k} closed form")
    result = CPowerResult(k, power, closed)
    if m is not None:
        s1 = norm_element(p.sigma[0], p.datum.t[0], m)
        fixed = p.monomial((m, m), RationalFunction(p.ring.one(), s1))
        if fixed != c ** m:
            raise RelationViolated(f"C^phi = C^{m}")
        result.fixed_element = fixed
    return result


def restrict_fiber(xi: Scalar, m: int) -> Scalar:
    """Parameter of the restricted fiber module: xi -> xi^m"""
    return xi ** m


# Relations

@dataclass(frozen=True)
class A2Profile:
    datum: TGWDatum
    lambdas: Tuple[Scalar, Scalar]
    etas: Tuple[Scalar, Scalar]


def a2_profile(d: TGWDatum, bound: int = 16) -> A2Profile:
    report = cartan_type(d, bound)
    if report.type_tag != "A2":
        raise UnsupportedFeature(f"datum has type {report.type_tag}, not A2")
    return A2Profile(d, report.lambdas, report.etas)


def _cubic(p: FiberProfile, first: int, second: int, sign: int, c1: Scalar, c2: Scalar, minus: bool) -> FiberElement:
    x = p.generator(first, sign)
    y = p.generator(second, sign)
    if minus:
        return y * x * x + x * y * x * c1 + x * x * y * c2
    return x * x * y + x * y * x * c1 + y * x * x * c2


def a2_relations(p: FiberProfile, a2: A2Profile) -> Dict[str, FiberElement]:
    """The four cubic relations of an A2 datum evaluated in the fiber algebra"""
    l1, l2 = a2.lambdas
    e1, e2 = a2.etas
    mu12, mu21 = p.mu12, p.mu21
    return {
        "X1+X1+X2+": _cubic(p, 0, 1, 1, l1 / mu12, l2 / mu12 ** 2, False),
        "X2-X1-X1-": _cubic(p, 0, 1, -1, l1 / mu21, l2 / mu21 ** 2, True),
        "X2+X2+X1+": _cubic(p, 1, 0, 1, e1 / mu21, e2 / mu21 ** 2, False),
        "X1-X2-X2-": _cubic(p, 1, 0, -1, e1 / mu12, e2 / mu12 ** 2, True),
    }


def serre_relations(p: FiberProfile) -> Dict[str, FiberElement]:
    """(X1^s)^2 X2^s - 2 X1^s X2^s X1^s + X2^s (X1^s)^2 for both signs"""
    out = {}
    for sign in (1, -1):
        x, y = p.generator(0, sign), p.generator(1, sign)
        label = "+" if sign > 0 else "-"
        out[f"serre{label}"] = x * x * y - x * y * x * 2 + y * x * x
    return out


def rewrite_identity_holds(p: FiberProfile, a: int, c: int, q: Scalar, beta: Scalar) -> bool:
    """x^a y x^c = c1 x^{a+c} y + c2 y x^{a+c} with x = X1+, y = X2+"""
    x, y = p.generator(0, 1), p.generator(1, 1)
    c1, c2 = rewrite_coeffs(a, c, q, beta)
    lhs = x ** a * y * x ** c
    rhs = x ** (a + c) * y * c1 + y * x ** (a + c) * c2
    return lhs == rhs


def down_up_check(p: FiberProfile) -> Dict[str, bool]:
    """z = X1+X2+ - X2+X1+ commutes with X1- and X2-"""
    x1, x2 = p.generator(0, 1), p.generator(1, 1)
    z = x1 * x2 - x2 * x1
    return {
        f"z*{letter_str((i, -1))} = {letter_str((i, -1))}*z": (z * p.generator(i, -1) - p.generator(i, -1) * z).is_zero()
        for i in (0, 1)
    }


# (name, letters as (index, sign) per exponent slot)
SPANNING_FAMILIES = {
    "X2+^a X1+^b X2+^c": ((1, 1), (0, 1), (1, 1)),
    "X1+^a X2-^b": ((0, 1), (1, -1)),
    "X1-^a X2+^b": ((0, -1), (1, 1)),
    "X2-^a X1-^b X2-^c": ((1, -1), (0, -1), (1, -1)),
    "X1+^a X2+^b X1+^c": ((0, 1), (1, 1), (0, 1)),
    "X2+^a X1-^b": ((1, 1), (0, -1)),
    "X2-^a X1+^b": ((1, -1), (0, 1)),
    "X1-^a X2-^b X1-^c": ((0, -1), (1, -1), (0, -1)),
}


@dataclass
class SpanningReport:
    a_max: int
    degrees: Dict[str, List[Degree]]
    all_nonzero: bool
    covered: bool

    def as_dict(self) -> dict:
        return {
            "a_max": self.a_max,
            "all_nonzero": self.all_nonzero,
            "covered": self.covered,
            "degrees": {name: [list(d) for d in ds] for name, ds in sorted(self.degrees.items())},
        }


def spanning_monomials(p: FiberProfile, a_max: int) -> SpanningReport:
    """Evaluate the spanning families with exponents <= a_max

    Each product must be a nonzero multiple of the normal monomial of its
    degree, and the families together must reach every degree in
    [-a_max, a_max]^2.
    """
    degrees: Dict[str, List[Degree]] = {}
    all_nonzero = True
    reached = set()
    for name, slots in SPANNING_FAMILIES.items():
        seen = []
        for exps in cartesian(range(a_max + 1), repeat=len(slots)):
            value = p.one()
            d = [0, 0]
            for (index, sign), k in zip(slots, exps):
                if k:
                    value = value * p.generator(index, sign) ** k
                    d[index] += sign * k
            d = tuple(d)
            if list(value.terms) != [d]:
                all_nonzero = False
            if d not in seen:
                seen.append(d)
            reached.add(d)
        degrees[name] = sorted(seen)
    wanted = {(i, j) for i in range(-a_max, a_max + 1) for j in range(-a_max, a_max + 1)}
    return SpanningReport(a_max, degrees, all_nonzero, wanted <= reached)
