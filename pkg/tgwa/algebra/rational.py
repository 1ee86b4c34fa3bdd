"""
Univariate rational functions k(h), kept reduced with monic denominators

Cancellation runs in a sympy polynomial ring over the field's domain.
"""

from fractions import Fraction
from functools import lru_cache
from typing import Tuple

from sympy.polys.rings import ring as sympy_ring

from tgwa.algebra.basering import BasePoly, PolyRing, RingAut, apply_aut
from tgwa.algebra.expressions import parse_expression
from tgwa.algebra.scalars import CycloField, Scalar
from tgwa.core.exceptions import DivisionByZeroPolynomial, RingMismatch


@lru_cache(maxsize=None)
def _domain_ring(field: CycloField):
    R, _ = sympy_ring("h", field.domain)
    return R


def _to_sympy(f: BasePoly):
    field = f.ring.field
    return _domain_ring(field).from_dict({k: field.to_domain(c) for k, c in f.terms.items()})


def _from_sympy(ring: PolyRing, p) -> BasePoly:
    field = ring.field
    return BasePoly(ring, {k: field.from_domain(c) for k, c in p.terms()})


def cancel(num: BasePoly, den: BasePoly) -> Tuple[BasePoly, BasePoly]:
    """num/den in lowest terms with den monic"""
    if den.is_zero():
        raise DivisionByZeroPolynomial(f"({num})/0")
    p, q = _to_sympy(num).cancel(_to_sympy(den))
    lead = q.LC
    p, q = p.quo_ground(lead), q.monic()
    return _from_sympy(num.ring, p), _from_sympy(num.ring, q)


class RationalFunction:
    """num/den in k(h), reduced, den monic"""

    __slots__ = ("num", "den")

    def __init__(self, num: BasePoly, den: BasePoly = None):
        ring = num.ring
        if ring.nvars != 1 or any(ring.laurent):
            raise RingMismatch("rational functions need a univariate polynomial ring")
        if den is None:
            den = ring.one()
        if den.is_zero():
            raise DivisionByZeroPolynomial(f"({num})/0")
        if num.is_zero():
            self.num, self.den = num, ring.one()
            return
        if den == ring.one():
            self.num, self.den = num, den
            return
        self.num, self.den = cancel(num, den)

    @property
    def ring(self) -> PolyRing:
        return self.num.ring

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, BasePoly):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction, Scalar)):
            return RationalFunction(self.ring.constant(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

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
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZeroPolynomial(f"({self}) / 0")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return RationalFunction(self.den, self.num) ** (-k)
        return RationalFunction(self.num ** k, self.den ** k)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == self.ring.one()

    def apply(self, aut: RingAut) -> "RationalFunction":
        return RationalFunction(apply_aut(aut, self.num), apply_aut(aut, self.den))

    def evaluate(self, point) -> Scalar:
        return self.num.evaluate(point) / self.den.evaluate(point)

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, RationalFunction) else other
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        num = str(self.num)
        if len(self.num.terms) > 1:
            num = f"({num})"
        return f"{num}/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"


def parse_rational(ring: PolyRing, text: str) -> RationalFunction:
    variables = {name: RationalFunction(g) for name, g in zip(ring.names, ring.gens())}
    return parse_expression(text, ring.field, variables, lambda s: RationalFunction(ring.constant(s)))
