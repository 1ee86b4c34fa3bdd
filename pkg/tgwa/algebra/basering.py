"""
Base rings: (Laurent) polynomial rings over a cyclotomic field

Polynomials are sparse maps from exponent vectors to Scalars. Ring
automorphisms are affine (every generator goes to a polynomial of total
degree at most one) so they can be inverted by linear algebra, and maximal
ideals are rational points.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from tgwa.algebra import linalg
from tgwa.algebra.expressions import parse_expression
from tgwa.algebra.scalars import CycloField, Scalar, lcm, multiplicative_order
from tgwa.core.exceptions import (
    DivisionByZero,
    InfiniteOrder,
    RingMismatch,
    SingularAffineMap,
    UnsupportedAutomorphismShape,
    UnsupportedFeature,
)

Exponent = Tuple[int, ...]


@dataclass(frozen=True)
class PolyRing:
    """k[h_1, ..., h_m], some variables possibly Laurent"""

    names: Tuple[str, ...]
    laurent: Tuple[bool, ...]
    field: CycloField

    def __post_init__(self):
        if len(self.names) != len(self.laurent):
            raise ValueError("one Laurent flag per variable")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")

    @classmethod
    def polynomial(cls, names: Sequence[str], field: CycloField) -> "PolyRing":
        return cls(tuple(names), (False,) * len(names), field)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def zero(self) -> "BasePoly":
        return BasePoly(self, {})

    def one(self) -> "BasePoly":
        return self.constant(1)

    def constant(self, value) -> "BasePoly":
        c = self.field(value)
        if c.is_zero():
            return self.zero()
        return BasePoly(self, {(0,) * self.nvars: c})

    def gen(self, j: int) -> "BasePoly":
        e = tuple(1 if k == j else 0 for k in range(self.nvars))
        return BasePoly(self, {e: self.field.one})

    def gens(self) -> List["BasePoly"]:
        return [self.gen(j) for j in range(self.nvars)]

    def monomial(self, exps: Exponent, coeff=1) -> "BasePoly":
        c = self.field(coeff)
        return BasePoly(self, {tuple(exps): c} if not c.is_zero() else {})

    def parse(self, text: str) -> "BasePoly":
        variables = dict(zip(self.names, self.gens()))
        return parse_expression(text, self.field, variables, self.constant)

    def __str__(self):
        shown = [f"{n}^(+-1)" if l else n for n, l in zip(self.names, self.laurent)]
        return f"k[{', '.join(shown)}] over Q(zeta_{self.field.conductor})"


def _graded_key(e: Exponent):
    return (sum(e), e)


class BasePoly:
    """Element of a PolyRing; immutable by convention"""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[Exponent, Scalar]):
        self.ring = ring
        self.terms: Dict[Exponent, Scalar] = {e: c for e, c in terms.items() if not c.is_zero()}

    # coercion
    def _coerce(self, other) -> Optional["BasePoly"]:
        if isinstance(other, BasePoly):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return self.ring.constant(other)
        return None

    # arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in o.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return BasePoly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return BasePoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms: Dict[Exponent, Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                terms[e] = terms[e] + c if e in terms else c
        return BasePoly(self.ring, terms)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "BasePoly":
        return BasePoly(self.ring, {e: v * c for e, v in self.terms.items()})

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZero("division by the zero polynomial")
        if not o.is_monomial():
            raise UnsupportedFeature("division by a polynomial that is not a unit")
        return self * o ** -1

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self._monomial_inverse() ** (-k)
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def _monomial_inverse(self) -> "BasePoly":
        if not self.is_monomial():
            raise UnsupportedFeature(f"{self} is not invertible in {self.ring}")
        (e, c), = self.terms.items()
        for j, (power, laurent) in enumerate(zip(e, self.ring.laurent)):
            if power and not laurent:
                raise UnsupportedFeature(f"{self.ring.names[j]} is not a Laurent variable")
        return BasePoly(self.ring, {tuple(-a for a in e): c.inverse()})

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0,) * self.ring.nvars}

    def constant_value(self) -> Scalar:
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def coefficient(self, e: Exponent) -> Scalar:
        return self.terms.get(tuple(e), self.ring.field.zero)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self) -> int:
        """Degree in the single variable of a univariate ring (-1 for zero)"""
        return max((e[0] for e in self.terms), default=-1)

    def leading_term(self) -> Tuple[Exponent, Scalar]:
        e = max(self.terms, key=_graded_key)
        return e, self.terms[e]

    def evaluate(self, point: Sequence[Scalar]) -> Scalar:
        field = self.ring.field
        total = field.zero
        for e, c in self.terms.items():
            value = c
            for coord, power in zip(point, e):
                if power:
                    value = value * field(coord) ** power
            total = total + value
        return total

    def substitute(self, images: Sequence["BasePoly"]) -> "BasePoly":
        """Replace h_j by images[j]; the result lives in the images' ring"""
        target = images[0].ring if images else self.ring
        result = target.zero()
        cache: Dict[Tuple[int, int], BasePoly] = {}
        for e, c in self.terms.items():
            term = target.constant(c)
            for j, power in enumerate(e):
                if power:
                    key = (j, power)
                    if key not in cache:
                        cache[key] = images[j] ** power
                    term = term * cache[key]
            result = result + term
        return result

    def __eq__(self, other):
        if isinstance(other, BasePoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, Scalar)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # printing
    def _monomial_str(self, e: Exponent) -> str:
        factors = []
        for name, power in zip(self.ring.names, e):
            if power == 1:
                factors.append(name)
            elif power:
                factors.append(f"{name}^{power}")
        return "*".join(factors)

    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for e in sorted(self.terms, key=_graded_key, reverse=True):
            negative, body = _signed_term(self.terms[e], self._monomial_str(e))
            if not out:
                out = ("-" if negative else "") + body
            else:
                out += (" - " if negative else " + ") + body
        return out

    def __repr__(self):
        return f"BasePoly({self})"


def _signed_term(c: Scalar, mono: str) -> Tuple[bool, str]:
    nonzero = [k for k, v in enumerate(c.coeffs) if v]
    if len(nonzero) == 1:
        k = nonzero[0]
        negative = c.coeffs[k] < 0
        magnitude = -c if negative else c
        text = str(magnitude)
        if not mono:
            return negative, text
        if magnitude == 1:
            return negative, mono
        return negative, f"{text}*{mono}"
    text = f"({c})"
    return False, f"{text}*{mono}" if mono else text


@dataclass(frozen=True)
class MaxIdealPoint:
    """The maximal ideal (h_1 - c_1, ..., h_m - c_m)"""

    coords: Tuple[Scalar, ...]

    def ideal_str(self, ring: PolyRing) -> str:
        parts = [str(g - c) for g, c in zip(ring.gens(), self.coords)]
        return "(" + ", ".join(parts) + ")"

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


class RingAut:
    """Affine automorphism of a PolyRing, given by generator images"""

    __slots__ = ("ring", "images", "inverse_images", "linear", "translation")

    def __init__(self, ring: PolyRing, images: Sequence[BasePoly]):
        if len(images) != ring.nvars:
            raise ValueError(f"need {ring.nvars} images, got {len(images)}")
        for img in images:
            if img.ring != ring:
                raise RingMismatch("automorphism image lives in another ring")
        self.ring = ring
        self.images: Tuple[BasePoly, ...] = tuple(images)
        self.linear, self.translation = _affine_parts(ring, self.images)
        field = ring.field
        inv = linalg.inverse(self.linear, field)
        if inv is None:
            raise SingularAffineMap(f"images {[str(i) for i in images]} are not invertible")
        gens = ring.gens()
        shifted = [g - b for g, b in zip(gens, self.translation)]
        self.inverse_images: Tuple[BasePoly, ...] = tuple(
            sum((shifted[k].scale(inv[j][k]) for k in range(ring.nvars)), ring.zero())
            for j in range(ring.nvars)
        )

    @classmethod
    def identity(cls, ring: PolyRing) -> "RingAut":
        return cls(ring, ring.gens())

    @classmethod
    def parse(cls, ring: PolyRing, texts: Sequence[str]) -> "RingAut":
        return cls(ring, [ring.parse(t) for t in texts])

    def inverse(self) -> "RingAut":
        return RingAut(self.ring, self.inverse_images)

    def is_identity(self) -> bool:
        return list(self.images) == self.ring.gens()

    def scalings(self) -> Optional[Tuple[Scalar, ...]]:
        """(c_j) when the map is h_j -> c_j h_j, else None"""
        field = self.ring.field
        out = []
        for j in range(self.ring.nvars):
            row = self.linear[j]
            if any(not row[k].is_zero() for k in range(self.ring.nvars) if k != j):
                return None
            if not self.translation[j].is_zero():
                return None
            out.append(row[j])
        return tuple(field(c) for c in out)

    def __call__(self, f: BasePoly) -> BasePoly:
        return apply_aut(self, f)

    def __eq__(self, other):
        return isinstance(other, RingAut) and self.ring == other.ring and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __str__(self):
        return ", ".join(f"{n} -> {img}" for n, img in zip(self.ring.names, self.images))

    def __repr__(self):
        return f"RingAut({self})"


def _affine_parts(ring: PolyRing, images: Sequence[BasePoly]):
    field = ring.field
    m = ring.nvars
    linear = linalg.zeros(field, m, m)
    translation = [field.zero] * m
    zero = (0,) * m
    for j, img in enumerate(images):
        for e, c in img.terms.items():
            if any(a < 0 for a in e) or sum(e) > 1:
                raise UnsupportedFeature(f"image {img} of {ring.names[j]} is not affine")
            if e == zero:
                translation[j] = c
            else:
                linear[j][e.index(1)] = c
        if ring.laurent[j] and (not img.is_monomial() or img.is_constant()):
            raise UnsupportedFeature(f"Laurent variable {ring.names[j]} must map to a scaled variable")
    return linear, translation


def apply_aut(a: RingAut, f: BasePoly) -> BasePoly:
    if f.ring != a.ring:
        raise RingMismatch(f"{f.ring} vs {a.ring}")
    return f.substitute(a.images)


def compose_auts(a: RingAut, b: RingAut) -> RingAut:
    """The automorphism applying b first, then a"""
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    return RingAut(a.ring, [apply_aut(a, img) for img in b.images])


def power_aut(a: RingAut, k: int) -> RingAut:
    if k < 0:
        return power_aut(a.inverse(), -k)
    result = RingAut.identity(a.ring)
    base = a
    while k:
        if k & 1:
            result = compose_auts(result, base)
        base = compose_auts(base, base)
        k >>= 1
    return result


def commute_check(a: RingAut, b: RingAut) -> bool:
    return compose_auts(a, b) == compose_auts(b, a)


def aut_order(a: RingAut, bound: int) -> Optional[int]:
    """Least k <= bound with a^k = id, or None"""
    scalings = a.scalings()
    if scalings is not None:
        orders = [multiplicative_order(c) for c in scalings]
        if any(o is None for o in orders):
            return None
        return lcm(*orders)
    power = a
    for k in range(1, bound + 1):
        if power.is_identity():
            return k
        power = compose_auts(a, power)
    return None


def point_action(a: RingAut, p: MaxIdealPoint) -> MaxIdealPoint:
    """Point of the ideal a(m_p): for h -> Ah + b this is A^-1 (p - b)"""
    coords = tuple(img.evaluate(p.coords) for img in a.inverse_images)
    for c, laurent in zip(coords, a.ring.laurent):
        if laurent and c.is_zero():
            raise SingularAffineMap("Laurent coordinate of a point became zero")
    return MaxIdealPoint(coords)


# Fixed subrings

@dataclass(frozen=True)
class FixedSubring:
    """Generators of R^phi for a supported finite-order phi|R"""

    ring: PolyRing
    generators: Tuple[BasePoly, ...]
    order: int
    kind: str  # identity | univariate-scaling | diagonal-scaling
    scalings: Tuple[Scalar, ...]

    def monomial_invariant(self, e: Exponent) -> bool:
        value = self.ring.field.one
        for c, power in zip(self.scalings, e):
            if power:
                value = value * c ** power
        return value == 1

    def pure_powers(self) -> Optional[Tuple[int, ...]]:
        """(e_j) when R^phi = k[h_1^e_1, ..., h_m^e_m], else None"""
        powers = [0] * self.ring.nvars
        for g in self.generators:
            if not g.is_monomial():
                return None
            (e, _), = g.terms.items()
            support = [j for j, a in enumerate(e) if a]
            if len(support) != 1 or powers[support[0]]:
                return None
            powers[support[0]] = e[support[0]]
        if not all(powers):
            return None
        return tuple(powers)


def fixed_subring(phi_r: RingAut, ell: int = None) -> FixedSubring:
    ring = phi_r.ring
    field = ring.field
    if ell is None:
        ell = aut_order(phi_r, 2 * field.conductor)
        if ell is None:
            raise InfiniteOrder(f"phi|R = ({phi_r}) has infinite order")
    if not power_aut(phi_r, ell).is_identity():
        raise InfiniteOrder(f"phi|R^{ell} is not the identity")
    if phi_r.is_identity():
        return FixedSubring(ring, tuple(ring.gens()), 1, "identity", (field.one,) * ring.nvars)
    scalings = phi_r.scalings()
    if scalings is None:
        raise UnsupportedAutomorphismShape(f"phi|R = ({phi_r}) is not a diagonal scaling")
    if any(ring.laurent):
        raise UnsupportedAutomorphismShape("scalings of Laurent rings are not supported")
    trial = FixedSubring(ring, (), ell, "", scalings)
    kept: List[Exponent] = []
    candidates = [e for e in product(range(ell + 1), repeat=ring.nvars) if 1 <= sum(e) <= ell]
    for e in sorted(candidates, key=_graded_key):
        if not trial.monomial_invariant(e):
            continue
        if any(all(a <= b for a, b in zip(f, e)) for f in kept):
            continue
        kept.append(e)
    kind = "univariate-scaling" if ring.nvars == 1 else "diagonal-scaling"
    return FixedSubring(ring, tuple(ring.monomial(e) for e in kept), ell, kind, scalings)


def membership(s: FixedSubring, f: BasePoly) -> bool:
    if f.ring != s.ring:
        raise RingMismatch(f"{f.ring} vs {s.ring}")
    if s.kind == "identity":
        return True
    return all(s.monomial_invariant(e) for e in f.terms)


def reynolds(phi_r: RingAut, ell: int, f: BasePoly) -> BasePoly:
    """Average of f over the cyclic group generated by phi|R"""
    total = f.ring.zero()
    image = f
    for _ in range(ell):
        total = total + image
        image = apply_aut(phi_r, image)
    return total.scale(f.ring.field.from_rational(Fraction(1, ell)))
