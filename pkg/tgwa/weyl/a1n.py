"""
Normal-form arithmetic in TGWAs of type (A1)^n

Elements are sums r_d Z^d with left coefficients r_d in R, where Z^d is the
reduced monomial: the X^- letters first, then the X^+ letters, each block
ascending in the index.

Two routes compute products. `multiply` uses a closed formula for Z^d Z^e;
`normal_form` runs the rewriting system on words of generators. The test
suite checks they agree and that the rewriting system is locally confluent.
"""

import re
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, List, Sequence, Tuple, Union

from tgwa.algebra.basering import BasePoly, RingAut, apply_aut
from tgwa.algebra.scalars import Scalar
from tgwa.core.exceptions import ExpressionSyntaxError, NotTypeA1n, ProfileMismatch
from tgwa.core.logging import setup_logging
from tgwa.weyl.datum import TGWDatum, cartan_type

logger = setup_logging()

Degree = Tuple[int, ...]
Letter = Tuple[int, int]  # (index, +1 | -1)
Token = Union[Letter, BasePoly]


def letter_str(letter: Letter) -> str:
    i, sign = letter
    return f"X{i + 1}{'+' if sign > 0 else '-'}"


class A1nProfile:
    """A type (A1)^n datum together with its gamma matrix"""

    def __init__(self, datum: TGWDatum, gamma: Sequence[Sequence[Scalar]]):
        self.datum = datum
        self.gamma = tuple(tuple(row) for row in gamma)
        self._sigma_cache: Dict[Degree, RingAut] = {}
        self._product_cache: Dict[Tuple[Degree, Degree], BasePoly] = {}

    @property
    def n(self) -> int:
        return self.datum.n

    @property
    def ring(self):
        return self.datum.ring

    def sigma_power(self, d: Degree) -> RingAut:
        d = tuple(d)
        if d not in self._sigma_cache:
            self._sigma_cache[d] = self.datum.sigma_power(d)
        return self._sigma_cache[d]

    def twist(self, d: Degree, r: BasePoly) -> BasePoly:
        """sigma^d(r), so that Z^d r = sigma^d(r) Z^d"""
        if not any(d):
            return r
        return apply_aut(self.sigma_power(d), r)

    def swap_scalar(self, a: Letter, b: Letter) -> Scalar:
        """c with a b = c b a for letters of different indices"""
        (i, s), (j, u) = a, b
        mu, gamma = self.datum.mu, self.gamma
        if s > 0 and u > 0:
            return gamma[i][j] / mu[i][j]
        if s < 0 and u < 0:
            return gamma[j][i] / mu[i][j]
        if s > 0:
            return mu[i][j]
        return mu[j][i].inverse()

    # constructors
    def element(self, terms: Dict[Degree, BasePoly]) -> "AlgebraElement":
        return AlgebraElement(self, terms)

    def scalar(self, r) -> "AlgebraElement":
        if not isinstance(r, BasePoly):
            r = self.ring.constant(r)
        return AlgebraElement(self, {(0,) * self.n: r})

    def one(self) -> "AlgebraElement":
        return self.scalar(1)

    def monomial(self, d: Degree, coeff=None) -> "AlgebraElement":
        coeff = self.ring.one() if coeff is None else coeff
        if not isinstance(coeff, BasePoly):
            coeff = self.ring.constant(coeff)
        return AlgebraElement(self, {tuple(d): coeff})

    def generator(self, i: int, sign: int) -> "AlgebraElement":
        d = [0] * self.n
        d[i] = sign
        return self.monomial(tuple(d))

    def letter_element(self, token: Token) -> "AlgebraElement":
        if isinstance(token, BasePoly):
            return self.scalar(token)
        return self.generator(*token)


def from_datum(d: TGWDatum, bound: int = 16) -> A1nProfile:
    report = cartan_type(d, bound)
    if report.type_tag != "A1n":
        raise NotTypeA1n(f"datum has type {report.type_tag}, Cartan {report.cartan}")
    return A1nProfile(d, report.gamma)


class AlgebraElement:
    """Finite sum of r_d Z^d"""

    __slots__ = ("profile", "terms")

    def __init__(self, profile: A1nProfile, terms: Dict[Degree, BasePoly]):
        self.profile = profile
        self.terms: Dict[Degree, BasePoly] = {tuple(d): c for d, c in terms.items() if not c.is_zero()}

    def _check(self, other: "AlgebraElement"):
        if other.profile is not self.profile:
            raise ProfileMismatch("elements of different algebras")

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.profile.scalar(other)
        self._check(other)
        terms = dict(self.terms)
        for d, c in other.terms.items():
            terms[d] = terms[d] + c if d in terms else c
        return AlgebraElement(self.profile, terms)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.profile, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.profile.scalar(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.profile.scalar(other)
        return multiply(self, other)

    def __rmul__(self, other):
        return multiply(self.profile.scalar(other), self)

    def __pow__(self, k: int):
        result = self.profile.one()
        for _ in range(k):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
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
            mono = monomial_str(d)
            if not mono:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(mono)
            else:
                parts.append(f"({coeff})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"AlgebraElement({self})"


def monomial_letters(d: Degree) -> List[Letter]:
    """Letters of Z^d"""
    minus = [(i, -1) for i, k in enumerate(d) if k < 0 for _ in range(-k)]
    plus = [(i, 1) for i, k in enumerate(d) if k > 0 for _ in range(k)]
    return minus + plus


def _blocked_letters(d: Degree) -> List[Letter]:
    """Letters of P(d) = W_1^{d_1} ... W_n^{d_n}"""
    return [(i, 1 if k > 0 else -1) for i, k in enumerate(d) for _ in range(abs(k))]


def monomial_str(d: Degree) -> str:
    parts = []
    letters = monomial_letters(d)
    k = 0
    while k < len(letters):
        run = 1
        while k + run < len(letters) and letters[k + run] == letters[k]:
            run += 1
        name = letter_str(letters[k])
        parts.append(name if run == 1 else f"{name}^{run}")
        k += run
    return "*".join(parts)


def _canonical_key(letter: Letter):
    i, sign = letter
    return (0 if sign < 0 else 1, i)


def _index_key(letter: Letter):
    return letter[0]


def reorder_scalar(profile: A1nProfile, letters: Sequence[Letter], key: Callable) -> Scalar:
    """c with word(letters) = c * word(stable sort of letters by key)

    Only letters of different indices are ever exchanged.
    """
    c = profile.datum.field.one
    for p in range(len(letters)):
        for q in range(p + 1, len(letters)):
            if key(letters[q]) < key(letters[p]):
                c = c * profile.swap_scalar(letters[p], letters[q])
    return c


def _rank_one_product(profile: A1nProfile, i: int, a: int, b: int) -> BasePoly:
    """r with W_i^a W_i^b = r W_i^{a+b} in the rank one subalgebra of index i"""
    ring = profile.ring
    if a * b >= 0:
        return ring.one()
    t = profile.datum.t[i]
    k = min(abs(a), abs(b))
    unit = [0] * profile.n
    result = ring.one()
    for r in range(k):
        unit[i] = a - r if a > 0 else -(abs(a) - 1 - r)
        result = result * profile.twist(tuple(unit), t)
    return result


def monomial_product(profile: A1nProfile, d: Degree, e: Degree) -> BasePoly:
    """c(d, e) with Z^d Z^e = c(d, e) Z^{d+e}"""
    key = (d, e)
    cache = profile._product_cache
    if key in cache:
        return cache[key]
    total = tuple(a + b for a, b in zip(d, e))
    # Z^d = P(d) / rho(d) where P(d) = rho(d) Z^d
    rho_d = reorder_scalar(profile, _blocked_letters(d), _canonical_key)
    rho_e = reorder_scalar(profile, _blocked_letters(e), _canonical_key)
    rho_total = reorder_scalar(profile, _blocked_letters(total), _canonical_key)
    interleave = reorder_scalar(profile, _blocked_letters(d) + _blocked_letters(e), _index_key)
    coeff = profile.ring.one()
    prefix = [0] * profile.n
    for i in range(profile.n):
        r = _rank_one_product(profile, i, d[i], e[i])
        coeff = coeff * profile.twist(tuple(prefix), r)
        prefix[i] = total[i]
    scalar = interleave * rho_total / (rho_d * rho_e)
    result = coeff.scale(scalar)
    cache[key] = result
    return result


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    if x.profile is not y.profile:
        raise ProfileMismatch("elements of different algebras")
    p = x.profile
    terms: Dict[Degree, BasePoly] = {}
    for d, f in x.terms.items():
        for e, g in y.terms.items():
            total = tuple(a + b for a, b in zip(d, e))
            c = f * p.twist(d, g) * monomial_product(p, d, e)
            terms[total] = terms[total] + c if total in terms else c
    return AlgebraElement(p, terms)


# Rewriting system

@dataclass(frozen=True)
class WordTerm:
    """coeff * (product of letters), coefficient on the left"""

    coeff: BasePoly
    word: Tuple[Letter, ...]


def _word_degree(profile: A1nProfile, word: Sequence[Letter]) -> Degree:
    d = [0] * profile.n
    for i, sign in word:
        d[i] += sign
    return tuple(d)


def applicable_positions(word: Sequence[Letter]) -> List[int]:
    """Positions p where a rule rewrites word[p] word[p+1]"""
    out = []
    for p in range(len(word) - 1):
        (i, s), (j, u) = word[p], word[p + 1]
        if (i == j and s != u) or i > j:
            out.append(p)
    return out


def rewrite_step(profile: A1nProfile, term: WordTerm, p: int) -> WordTerm:
    """Apply the rule at position p

    X_i^- X_i^+ -> t_i, X_i^+ X_i^- -> sigma_i(t_i), and for i > j the
    transposition of a letter of index i with one of index j.
    """
    word = term.word
    a, b = word[p], word[p + 1]
    if a[0] == b[0] and a[1] != b[1]:
        i = a[0]
        t = profile.datum.t[i]
        r = t if a[1] < 0 else apply_aut(profile.datum.sigma[i], t)
        r = profile.twist(_word_degree(profile, word[:p]), r)
        return WordTerm(term.coeff * r, word[:p] + word[p + 2:])
    if a[0] > b[0]:
        c = profile.swap_scalar(a, b)
        return WordTerm(term.coeff.scale(c), word[:p] + (b, a) + word[p + 2:])
    raise ValueError(f"no rule applies at position {p}")


def rewrite_to_blocks(profile: A1nProfile, term: WordTerm) -> WordTerm:
    """Rewrite until no rule applies (leftmost-first); the result is P(d) shaped"""
    while True:
        positions = applicable_positions(term.word)
        if not positions:
            return term
        term = rewrite_step(profile, term, positions[0])


def to_canonical(profile: A1nProfile, term: WordTerm) -> AlgebraElement:
    """Transpose a P(d) shaped word into Z^d"""
    rho = reorder_scalar(profile, term.word, _canonical_key)
    d = _word_degree(profile, term.word)
    return profile.monomial(d, term.coeff.scale(rho))


def normal_form(profile: A1nProfile, tokens: Sequence[Token]) -> AlgebraElement:
    """Canonical element equal to the product of the tokens"""
    coeff = profile.ring.one()
    word: List[Letter] = []
    for token in tokens:
        if isinstance(token, BasePoly):
            coeff = coeff * profile.twist(_word_degree(profile, word), token)
        else:
            word.append(tuple(token))
    term = rewrite_to_blocks(profile, WordTerm(coeff, tuple(word)))
    return to_canonical(profile, term)


_GENERATOR = re.compile(r"(X\d*[+-])")


def parse_word(text: str, n: int, parse_coefficient: Callable[[str], object]) -> List:
    """Whitespace-separated tokens X1+ X2- ... with coefficient expressions between them

    `X+` and `X-` name the generators of a rank one algebra.
    """
    tokens = []
    for chunk in _GENERATOR.split(text):
        chunk = chunk.strip()
        if not chunk:
            continue
        if _GENERATOR.fullmatch(chunk):
            index = int(chunk[1:-1]) - 1 if chunk[1:-1] else 0
            if not 0 <= index < n or (not chunk[1:-1] and n != 1):
                raise ExpressionSyntaxError(f"no generator {chunk} in rank {n}", text, text.find(chunk) + 1)
            tokens.append((index, 1 if chunk[-1] == "+" else -1))
        else:
            tokens.append(parse_coefficient(chunk))
    return tokens


def phi_action(x: AlgebraElement, alpha: Sequence[Scalar], phi_r: RingAut) -> AlgebraElement:
    """phi(r Z^d) = phi(r) prod alpha_i^{d_i} Z^d"""
    terms = {}
    for d, c in x.terms.items():
        scale = x.profile.datum.field.one
        for a, k in zip(alpha, d):
            if k:
                scale = scale * a ** k
        terms[d] = apply_aut(phi_r, c).scale(scale)
    return AlgebraElement(x.profile, terms)


# Iterated Ore extension presentation

@dataclass
class OreStep:
    variable: str
    theta: Dict[str, AlgebraElement]
    delta: Dict[str, AlgebraElement]


@dataclass
class OrePresentation:
    plus_steps: List[OreStep]
    minus_steps: List[OreStep]
    quotient_relations: List[AlgebraElement]
    ledger: List[Tuple[str, bool]] = dc_field(default_factory=list)

    @property
    def verified(self) -> bool:
        return all(ok for _, ok in self.ledger)

    def as_dict(self) -> dict:
        def step(s: OreStep):
            return {
                "variable": s.variable,
                "theta": {k: str(v) for k, v in s.theta.items()},
                "delta": {k: str(v) for k, v in s.delta.items() if not v.is_zero()},
            }

        return {
            "plus_steps": [step(s) for s in self.plus_steps],
            "minus_steps": [step(s) for s in self.minus_steps],
            "quotient_relations": [str(r) for r in self.quotient_relations],
            "relations": [{"relation": name, "holds": ok} for name, ok in self.ledger],
            "verified": self.verified,
        }


def ore_presentation(p: A1nProfile) -> OrePresentation:
    """Two-phase iterated Ore extension whose quotient is the algebra

    T0 = R[X1+; s1]...[Xn+; sn], then T = T0[X1-; theta_1, delta_1]...;
    A = T / (X_i^- X_i^+ - t_i). Each relation is checked inside A.
    """
    ring = p.ring
    mu, gamma = p.datum.mu, p.gamma
    gens = dict(zip(ring.names, (p.scalar(g) for g in ring.gens())))
    zero = AlgebraElement(p, {})

    def x(i, sign):
        return p.generator(i, sign)

    plus_steps = []
    for i in range(p.n):
        theta = {name: p.scalar(apply_aut(p.datum.sigma[i], g)) for name, g in zip(ring.names, ring.gens())}
        for j in range(i):
            theta[letter_str((j, 1))] = x(j, 1) * p.scalar(gamma[i][j] / mu[i][j])
        plus_steps.append(OreStep(letter_str((i, 1)), theta, {k: zero for k in theta}))

    minus_steps = []
    for i in range(p.n):
        inverse = p.datum.sigma[i].inverse()
        theta = {name: p.scalar(apply_aut(inverse, g)) for name, g in zip(ring.names, ring.gens())}
        delta = {k: zero for k in theta}
        for j in range(p.n):
            name = letter_str((j, 1))
            theta[name] = x(j, 1) if i == j else x(j, 1) * p.scalar(mu[j][i].inverse())
            delta[name] = zero
        t_i = p.datum.t[i]
        delta[letter_str((i, 1))] = p.scalar(t_i - apply_aut(p.datum.sigma[i], t_i))
        for j in range(i):
            name = letter_str((j, -1))
            theta[name] = x(j, -1) * p.scalar(mu[j][i] / gamma[i][j])
            delta[name] = zero
        minus_steps.append(OreStep(letter_str((i, -1)), theta, delta))

    quotient = [x(i, -1) * x(i, 1) - p.scalar(p.datum.t[i]) for i in range(p.n)]
    presentation = OrePresentation(plus_steps, minus_steps, quotient)

    lookup = dict(gens)
    for i in range(p.n):
        lookup[letter_str((i, 1))] = x(i, 1)
        lookup[letter_str((i, -1))] = x(i, -1)
    for step in plus_steps + minus_steps:
        y = lookup[step.variable]
        for name, image in step.theta.items():
            holds = y * lookup[name] == image * y + step.delta[name]
            presentation.ledger.append((f"{step.variable}*{name} = theta({name})*{step.variable} + delta({name})", holds))
    for i, rel in enumerate(quotient):
        presentation.ledger.append((f"{letter_str((i, -1))}*{letter_str((i, 1))} - t{i + 1} = 0", rel.is_zero()))
    logger.debug(f"Ore presentation: {len(presentation.ledger)} relations, verified={presentation.verified}")
    return presentation
