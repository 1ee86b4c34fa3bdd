"""
Exact arithmetic in cyclotomic fields Q(zeta_N)

A Scalar is stored by its coordinates in the power basis 1, z, ..., z^(d-1)
of z = zeta_N, d = phi(N), reduced modulo the cyclotomic polynomial.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterable, Optional, Tuple, Union

from sympy import QQ, I, Poly, Rational, Symbol, cyclotomic_poly, exp, pi, totient

from tgwa.core.exceptions import DivisionByZero, FieldMismatch, NotASquare, ZeroInput

_x = Symbol("x")

RationalLike = Union[int, Fraction]


def _to_fraction(value) -> Fraction:
    """sympy Rational (or int) to Fraction"""
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    return Fraction(int(value.p), int(value.q))


def _mpq_to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def _to_sympy(value: Fraction) -> Rational:
    return Rational(value.numerator, value.denominator)


class CycloField:
    """The cyclotomic field Q(zeta_N)"""

    def __init__(self, conductor: int):
        if conductor < 1:
            raise ValueError(f"conductor must be positive, got {conductor}")
        self.conductor = conductor
        self.degree = int(totient(conductor))
        self._modulus_poly = Poly(cyclotomic_poly(conductor, _x), _x, domain=QQ)
        # low to high, monic
        self.modulus: Tuple[Fraction, ...] = tuple(
            _to_fraction(c) for c in reversed(self._modulus_poly.all_coeffs())
        )
        self._domain = None
        self.zero = Scalar(self, (Fraction(0),) * self.degree)
        self.one = self.from_rational(1)

    def __eq__(self, other):
        return isinstance(other, CycloField) and other.conductor == self.conductor

    def __hash__(self):
        return hash(("CycloField", self.conductor))

    def __repr__(self):
        return f"CycloField({self.conductor})"

    def reduce(self, coeffs: Iterable[RationalLike]) -> "Scalar":
        """Build a Scalar from coefficients of any polynomial in z (low to high)"""
        c = [Fraction(v) for v in coeffs]
        d = self.degree
        for i in range(len(c) - 1, d - 1, -1):
            lead = c[i]
            if lead:
                for j in range(d + 1):
                    c[i - d + j] -= lead * self.modulus[j]
        c = c[:d] + [Fraction(0)] * (d - len(c))
        return Scalar(self, tuple(c))

    def from_rational(self, value: RationalLike) -> "Scalar":
        return Scalar(self, (Fraction(value),) + (Fraction(0),) * (self.degree - 1))

    def __call__(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"{value.field} is not {self}")
            return value
        return self.from_rational(value)

    def zeta(self, k: int = 1) -> "Scalar":
        """zeta_N^k for any integer k"""
        k %= self.conductor
        return self.reduce([0] * k + [1])

    def root_of_unity(self, order: int, k: int = 1) -> "Scalar":
        """zeta_order^k, embedded in this field"""
        if order < 1 or self.conductor % order:
            raise FieldMismatch(f"zeta({order}) does not lie in Q(zeta_{self.conductor})")
        return self.zeta((self.conductor // order) * k)

    # sympy domain, for matrices and rational functions
    @property
    def domain(self):
        """QQ, or the algebraic field QQ<zeta_N> with the same power basis"""
        if self._domain is None:
            if self.degree == 1:
                self._domain = QQ
            else:
                root = exp(2 * pi * I / self.conductor)
                self._domain = QQ.algebraic_field((self._modulus_poly, root))
        return self._domain

    def to_domain(self, a: "Scalar"):
        if self.degree == 1:
            return QQ(a.coeffs[0].numerator, a.coeffs[0].denominator)
        return self.domain.new([QQ(c.numerator, c.denominator) for c in reversed(a.coeffs)])

    def from_domain(self, element) -> "Scalar":
        if self.degree == 1:
            return self.from_rational(_mpq_to_fraction(element))
        return self.reduce(_mpq_to_fraction(c) for c in reversed(element.to_list()))


@lru_cache(maxsize=None)
def cyclotomic_field(conductor: int) -> CycloField:
    """Shared CycloField instance per conductor"""
    return CycloField(conductor)


class Scalar:
    """Element of a CycloField"""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CycloField, coeffs: Tuple[Fraction, ...]):
        self.field = field
        self.coeffs = coeffs

    # coercion
    def _coerce(self, other) -> Optional["Scalar"]:
        if isinstance(other, Scalar):
            if other.field.conductor != self.field.conductor:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    # arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_rational():
            r = o.coeffs[0]
            return Scalar(self.field, tuple(a * r for a in self.coeffs))
        if self.is_rational():
            r = self.coeffs[0]
            return Scalar(self.field, tuple(r * b for b in o.coeffs))
        prod = [Fraction(0)] * (2 * self.field.degree - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return self.field.reduce(prod)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            return self.field.from_rational(1 / self.coeffs[0])
        poly = Poly([_to_sympy(c) for c in reversed(self.coeffs)], _x, domain=QQ)
        inv = poly.invert(self.field._modulus_poly)
        return self.field.reduce(_to_fraction(c) for c in reversed(inv.all_coeffs()))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # predicates
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field.conductor == other.field.conductor and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field.conductor, self.coeffs))

    def sqrt(self) -> "Scalar":
        """Some s with s*s == self, looked for among r*zeta^k with r rational"""
        if self.is_zero():
            return self
        n = self.field.conductor
        for k in range(n):
            w = self * self.field.zeta(-2 * k)
            if w.is_rational():
                r = _rational_sqrt(w.coeffs[0])
                if r is not None:
                    return self.field.zeta(k) * r
        raise NotASquare(f"{self} is not a square of the form r*zeta^k in {self.field}")

    # printing
    def __str__(self):
        n = self.field.conductor
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                body, sign = str(abs(c)), c < 0
            else:
                power = f"zeta({n})" if k == 1 else f"zeta({n})^{k}"
                body = power if abs(c) == 1 else f"{abs(c)}*{power}"
                sign = c < 0
            parts.append((sign, body))
        if not parts:
            return "0"
        first_sign, first_body = parts[0]
        out = ("-" if first_sign else "") + first_body
        for sign, body in parts[1:]:
            out += (" - " if sign else " + ") + body
        return out

    def __repr__(self):
        return f"Scalar({self})"


def _rational_sqrt(value: Fraction) -> Optional[Fraction]:
    if value < 0:
        return None
    num, den = isqrt(value.numerator), isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None


def multiplicative_order(a: Scalar) -> Optional[int]:
    """Least k >= 1 with a^k = 1, or None

    Finite orders in Q(zeta_N) divide lcm(2, N), so searching up to 2N is
    exhaustive.
    """
    if a.is_zero():
        raise ZeroInput("multiplicative order of zero")
    power = a
    for k in range(1, 2 * a.field.conductor + 1):
        if power == 1:
            return k
        power = power * a
    return None


def lcm(*values: int) -> int:
    result = 1
    for v in values:
        result = result * v // gcd(result, v)
    return result
