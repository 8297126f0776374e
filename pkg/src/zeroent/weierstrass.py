"""
File Chain (see DEVELOPER.md):
Doc Version: v1.0.0
Date Modified: 2026-10-19

- Called by: reports.py (bp and char2 commands), tests
- Reads from: None
- Writes to: None
- Calls into: finitefield.py, sympy (sqf_list, factor_list, gcd)

Purpose: Homogeneous binary forms over Q, Q(i) and GF(2^k); the analysis of
         the family y^2 = x^3 + 2 a2(s,t) x^2 + t^4 x and the exhaustive
         characteristic-2 isotrivial automorphism search.

Blast Radius: MEDIUM - the bp and char2 reports. Nothing else imports this.

Zeroent Weierstrass Families

PURPOSE:
    A HomPoly of degree d stores the coefficients of s^d, s^(d-1) t, ..., t^d.
    The family is given by a2 = a s^2 + b s t + c t^2. Its reducible fibers
    sit over t = 0 (I8) and over the four roots of delta0 = a2^2 - t^4 (I1).

CHARACTERISTIC 2:
    The equation y^2 + s t^2 y = x^3 + a t^2 x^2 + b t^6 is transformed by
    (s, t, x, y) -> (lam s, mu t, beta x + b2, y + b1 x + b3). The search
    fixes (lam, mu, beta) on the y and x^3 coefficients, solves b2 from the
    x^2 coefficient for every b1, and reads b3 off a table of the additive
    map b3 -> b3^2 + s t^2 b3. Every hit is re-checked on the full equation.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Any, Iterable, Sequence

import sympy
from sympy import QQ_I, Poly

from zeroent.finitefield import (
    BinaryField,
    Field,
    FieldElem,
    Q,
    Qi,
    get_field,
    to_gaussian,
)
from zeroent.models import FieldError, InfiniteAutBroken, InvalidRootsError

_LOGGER = logging.getLogger(__name__)

S = sympy.Symbol("s")

AUT_STRINGS = {
    "a": "non-split extension of Z/2 by Z/4 x D∞",
    "b": "Z/4 x D∞",
    "c": "Z/2 x D∞",
}
SEARCH_FIELDS = ("F2", "F4", "F16")


@dataclass(frozen=True)
class HomPoly:
    field: Field
    coeffs: tuple[FieldElem, ...]

    @classmethod
    def of(cls, field: Field, values: Iterable) -> "HomPoly":
        return cls(field, tuple(v if isinstance(v, FieldElem) else field.from_int(v) for v in values))

    @classmethod
    def raw(cls, field: Field, values: Iterable) -> "HomPoly":
        """wrap raw field values (bits for GF(2^k))"""
        return cls(field, tuple(FieldElem(field, v) for v in values))

    @classmethod
    def monomial(cls, field: Field, s_power: int, t_power: int, coeff: FieldElem | int = 1) -> "HomPoly":
        values: list[FieldElem | int] = [0] * (s_power + t_power + 1)
        values[t_power] = coeff
        return cls.of(field, values)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other: "HomPoly") -> None:
        if other.field != self.field:
            raise FieldError(f"cannot mix {self.field.name} and {other.field.name} forms")
        if other.degree != self.degree:
            raise FieldError(f"degree {self.degree} and degree {other.degree} forms do not add")

    def __add__(self, other: "HomPoly") -> "HomPoly":
        self._check(other)
        return HomPoly(self.field, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "HomPoly":
        return HomPoly(self.field, tuple(-x for x in self.coeffs))

    def __sub__(self, other: "HomPoly") -> "HomPoly":
        return self + (-other)

    def __mul__(self, other: "HomPoly | FieldElem | int") -> "HomPoly":
        if not isinstance(other, HomPoly):
            return HomPoly(self.field, tuple(x * other for x in self.coeffs))
        if other.field != self.field:
            raise FieldError(f"cannot mix {self.field.name} and {other.field.name} forms")
        out = [self.field.zero()] * (self.degree + other.degree + 1)
        for i, x in enumerate(self.coeffs):
            if not x:
                continue
            for j, y in enumerate(other.coeffs):
                if y:
                    out[i + j] = out[i + j] + x * y
        return HomPoly(self.field, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "HomPoly":
        result = HomPoly.of(self.field, [1])
        for _ in range(n):
            result = result * self
        return result

    def evaluate(self, s: FieldElem | int, t: FieldElem | int) -> FieldElem:
        total = self.field.zero()
        d = self.degree
        for i, c in enumerate(self.coeffs):
            total = total + c * _power(self.field, s, d - i) * _power(self.field, t, i)
        return total

    def rescale(self, ls: FieldElem | int, lt: FieldElem | int) -> "HomPoly":
        """the form f(ls * s, lt * t)"""
        d = self.degree
        return HomPoly(
            self.field,
            tuple(c * _power(self.field, ls, d - i) * _power(self.field, lt, i) for i, c in enumerate(self.coeffs)),
        )

    def substitute_squares(self) -> "HomPoly":
        """the form f(s^2, t^2)"""
        out = [self.field.zero()] * (2 * self.degree + 1)
        for i, c in enumerate(self.coeffs):
            out[2 * i] = c
        return HomPoly(self.field, tuple(out))

    def t_valuation(self) -> int:
        """largest v with t^v dividing the form"""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return self.degree + 1

    def drop_t_power(self, v: int) -> "HomPoly":
        if any(self.coeffs[:v]):
            raise FieldError(f"t^{v} does not divide the form")
        return HomPoly(self.field, self.coeffs[v:])

    def proportional_to(self, other: "HomPoly") -> bool:
        self._check(other)
        return all(
            x * w == y * z
            for (x, z), (y, w) in product(zip(self.coeffs, other.coeffs), repeat=2)
        )

    def to_sympy(self) -> Poly:
        """dehomogenised at t = 1, over QQ_I"""
        if self.field.characteristic:
            raise FieldError(f"{self.field.name} forms have no sympy image here")
        exprs = [_to_expr(c) for c in self.coeffs]
        return Poly(sum(e * S ** (self.degree - i) for i, e in enumerate(exprs)), S, domain=QQ_I)

    def is_squarefree(self) -> bool:
        """no repeated root on P^1"""
        if self.degree >= 2 and not self.coeffs[0] and not self.coeffs[1]:
            return False
        p = self.to_sympy()
        if p.is_zero:
            return False
        return sympy.gcd(p, p.diff(S)).degree() == 0

    def values(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def raw_values(self) -> tuple:
        return tuple(c.value for c in self.coeffs)

    def __str__(self) -> str:
        d = self.degree
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "".join(p for p in (_var("s", d - i), _var("t", i)) if p)
                terms.append(f"({c}){mono}" if mono else f"({c})")
        return " + ".join(terms) or "0"


def _var(name: str, n: int) -> str:
    return "" if n == 0 else name if n == 1 else f"{name}^{n}"


def _power(field: Field, x: FieldElem | int, n: int) -> FieldElem:
    base = x if isinstance(x, FieldElem) else field.from_int(x)
    return base**n


def _to_expr(c: FieldElem):
    if c.field == Q:
        return sympy.Rational(c.value.numerator, c.value.denominator)
    return QQ_I.to_sympy(c.value)


# --- the characteristic-0 family ---------------------------------------------


@dataclass(frozen=True)
class BPFamily:
    a: FieldElem
    b: FieldElem
    c: FieldElem

    def __post_init__(self):
        fields = {self.a.field, self.b.field, self.c.field}
        if len(fields) != 1:
            raise FieldError("a, b and c must live in one field")
        if self.field.characteristic:
            raise FieldError(f"the family needs characteristic 0, got {self.field.name}")

    @classmethod
    def parse(cls, a: str, b: str, c: str, field: str = "Q") -> "BPFamily":
        f = get_field(field)
        return cls(f.parse(a), f.parse(b), f.parse(c))

    @property
    def field(self) -> Field:
        return self.a.field

    @property
    def a2(self) -> HomPoly:
        return HomPoly(self.field, (self.a, self.b, self.c))

    def t_power(self, n: int) -> HomPoly:
        return HomPoly.monomial(self.field, 0, n)

    def check_range(self) -> None:
        if not self.a:
            raise InfiniteAutBroken("a = 0: delta0(1, 0) vanishes")
        if self.c * self.c == 1:
            raise InfiniteAutBroken("c^2 = 1: delta0(0, 1) vanishes")

    def to_dict(self) -> dict[str, str]:
        return {"a": str(self.a), "b": str(self.b), "c": str(self.c), "field": self.field.name}


def delta0(f: BPFamily) -> HomPoly:
    """a2^2 - t^4 = [a^2, 2ab, 2ac + b^2, 2bc, c^2 - 1]"""
    return f.a2 * f.a2 - f.t_power(4)


def full_discriminant(f: BPFamily) -> HomPoly:
    """16 a4^2 (A2^2 - 4 a4) for A2 = 2 a2 and a4 = t^4, i.e. 64 t^8 delta0"""
    big_a2 = f.a2 * 2
    a4 = f.t_power(4)
    return (a4 * a4) * (big_a2 * big_a2 - a4 * 4) * 16


def full_discriminant_degrees(f: BPFamily) -> list[int]:
    """root multiplicities of the discriminant on P^1, largest first"""
    f.check_range()
    if not delta0(f).is_squarefree():
        raise InfiniteAutBroken("the four roots of delta0 must be distinct")
    disc = full_discriminant(f)
    v = disc.t_valuation()
    rest = disc.drop_t_power(v).to_sympy()
    degrees = [v] if v else []
    for factor, multiplicity in rest.sqf_list()[1]:
        degrees.extend([multiplicity] * factor.degree())
    _LOGGER.debug("discriminant of %s splits as %s", f.to_dict(), degrees)
    return sorted(degrees, reverse=True)


@dataclass(frozen=True)
class LambdaSymmetries:
    group: tuple[FieldElem, ...]
    expected_order: int

    @property
    def order(self) -> int:
        return len(self.group)

    @property
    def consistent(self) -> bool:
        return self.order == self.expected_order

    def to_dict(self) -> dict[str, Any]:
        return {
            "group": [str(x) for x in self.group],
            "n": self.order,
            "expected_n": self.expected_order,
        }


def mu4() -> list[FieldElem]:
    i = Qi.i
    return [Qi.one(), i, -Qi.one(), -i]


def lambda_symmetries(f: BPFamily) -> LambdaSymmetries:
    """lam in mu4 with delta0(lam s, t) proportional to delta0(s, t)"""
    d0 = delta0(f)
    if not d0.is_squarefree():
        raise InfiniteAutBroken("the four roots of delta0 must be distinct")
    gaussian = HomPoly(Qi, tuple(to_gaussian(c) for c in d0.coeffs))
    group = tuple(lam for lam in mu4() if gaussian.rescale(lam, 1).proportional_to(gaussian))
    if f.b:
        expected = 1
    elif f.c:
        expected = 2
    else:
        expected = 4
    return LambdaSymmetries(group, expected)


@dataclass(frozen=True)
class BPCase:
    case: str
    roots: tuple[FieldElem, ...]

    @property
    def aut(self) -> str:
        return AUT_STRINGS[self.case]

    def to_dict(self) -> dict[str, Any]:
        return {"case": self.case, "aut": self.aut, "normalized_roots": [str(r) for r in self.roots]}


def _normalize_roots(roots: Sequence[FieldElem]) -> tuple[FieldElem, ...]:
    if len(roots) != 4:
        raise InvalidRootsError(f"expected 4 roots, got {len(roots)}")
    fields = {r.field for r in roots}
    if len(fields) != 1:
        raise InvalidRootsError("roots live in different fields")
    if any(not r for r in roots):
        raise InvalidRootsError("roots must be non-zero")
    if len(set(roots)) != 4:
        raise InvalidRootsError("roots must be distinct")
    if any(r == 1 for r in roots):
        return tuple(roots)
    pivot = min(roots, key=lambda r: r.sort_key)
    return tuple(r / pivot for r in roots)


def classify_bp_case(roots: Sequence[FieldElem]) -> BPCase:
    normalized = _normalize_roots(roots)
    if all(r**4 == 1 for r in normalized):
        return BPCase("a", normalized)
    if any(r == -1 for r in normalized):
        rest = [r for r in normalized if r != 1 and r != -1]
        if len(rest) == 2 and rest[0] + rest[1] == 0 and rest[0] ** 4 != 1:
            return BPCase("b", normalized)
    return BPCase("c", normalized)


def gaussian_roots(f: BPFamily) -> list[FieldElem] | None:
    """the four roots a_i of delta0(s, 1) when all of them lie in Q(i)"""
    p = delta0(f).to_sympy()
    if p.degree() != 4:
        return None
    found: list[FieldElem] = []
    _, factors = sympy.factor_list(p.as_expr(), S, extension=sympy.I)
    for factor, multiplicity in factors:
        linear = Poly(factor, S)
        if linear.degree() != 1:
            return None
        lead, const = linear.all_coeffs()
        root = QQ_I.from_sympy(sympy.expand(-const / lead))
        found.extend([FieldElem(Qi, root)] * multiplicity)
    return found


def verify_roots(f: BPFamily, roots: Sequence[FieldElem]) -> bool:
    """delta0(a_i, 1) = 0 for every supplied root"""
    d0 = delta0(f)
    if any(r.field != d0.field for r in roots):
        d0 = HomPoly(Qi, tuple(to_gaussian(c) for c in d0.coeffs))
        roots = [to_gaussian(r) for r in roots]
    return all(not d0.evaluate(r, 1) for r in roots)


@dataclass(frozen=True)
class WeierstrassCoefficients:
    a2_squares: HomPoly
    x2: HomPoly
    x1: HomPoly

    def to_dict(self) -> dict[str, list[str]]:
        return {"a2(s^2,t^2)": self.a2_squares.values(), "x^2": self.x2.values(), "x": self.x1.values()}


def k3_cover_substitution(f: BPFamily) -> WeierstrassCoefficients:
    """y^2 = x^3 + 2 a2(s^2, t^2) x^2 + t^8 x"""
    a2_squares = f.a2.substitute_squares()
    return WeierstrassCoefficients(a2_squares, a2_squares * 2, f.t_power(8))


# --- characteristic 2 ----------------------------------------------------------


@dataclass(frozen=True)
class Char2Aut:
    lam: FieldElem
    mu: FieldElem
    beta: FieldElem
    b1: HomPoly
    b2: HomPoly
    b3: HomPoly

    @property
    def key(self) -> tuple:
        return (
            self.lam.value,
            self.mu.value,
            self.beta.value,
            self.b1.raw_values(),
            self.b2.raw_values(),
            self.b3.raw_values(),
        )

    @property
    def translation(self) -> tuple:
        return (self.b1.raw_values(), self.b2.raw_values(), self.b3.raw_values())

    def to_dict(self) -> dict[str, Any]:
        return {
            "lambda": str(self.lam),
            "mu": str(self.mu),
            "beta": str(self.beta),
            "b1": self.b1.values(),
            "b2": self.b2.values(),
            "b3": self.b3.values(),
        }


def _search_field(field: Field | str) -> BinaryField:
    if isinstance(field, str):
        field = get_field(field)
    if not isinstance(field, BinaryField) or field.name not in SEARCH_FIELDS:
        raise FieldError(f"the search runs over {', '.join(SEARCH_FIELDS)}, got {field.name}")
    return field


def transformed_coefficients(
    a: FieldElem, b: FieldElem, lam, mu, beta, b1: HomPoly, b2: HomPoly, b3: HomPoly
) -> tuple[HomPoly, FieldElem, HomPoly, HomPoly, HomPoly]:
    """(y, x^3, x^2, x, constant) coefficients after the substitution"""
    field = a.field
    st2 = HomPoly.monomial(field, 1, 2)
    t2 = HomPoly.monomial(field, 0, 2)
    t6 = HomPoly.monomial(field, 0, 6)
    y_coeff = st2 * (lam * mu * mu)
    x3 = beta**3
    x2 = b1 * b1 + b2 * (beta * beta) + t2 * (a * beta * beta * mu * mu)
    x1 = y_coeff * b1 + (b2 * b2) * beta
    const = b3 * b3 + y_coeff * b3 + b2 * b2 * b2 + (t2 * b2 * b2) * (a * mu * mu) + t6 * (b * mu**6)
    return y_coeff, x3, x2, x1, const


def _preserves(a: FieldElem, b: FieldElem, candidate: Char2Aut) -> bool:
    field = a.field
    y_coeff, x3, x2, x1, const = transformed_coefficients(
        a, b, candidate.lam, candidate.mu, candidate.beta, candidate.b1, candidate.b2, candidate.b3
    )
    return (
        y_coeff == HomPoly.monomial(field, 1, 2)
        and x3 == field.one()
        and x2 == HomPoly.monomial(field, 0, 2, a)
        and x1.is_zero
        and const == HomPoly.monomial(field, 0, 6, b)
    )


# raw GF(2^k) forms: tuples of ints, coefficient of s^d first


def _radd(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    return tuple(x ^ y for x, y in zip(p, q))


def _rmul(field: BinaryField, p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                if y:
                    out[i + j] ^= field.mul(x, y)
    return tuple(out)


def _rscale(field: BinaryField, c: int, p: Sequence[int]) -> tuple[int, ...]:
    return tuple(field.mul(c, x) for x in p)


def _mono(degree: int, t_power: int, coeff: int = 1) -> tuple[int, ...]:
    return tuple(coeff if i == t_power else 0 for i in range(degree + 1))


@lru_cache(maxsize=None)
def _artin_schreier_table(name: str) -> dict[tuple[int, ...], list[tuple[int, ...]]]:
    """preimages of b3 -> b3^2 + s t^2 b3 over all cubic forms b3"""
    field = _search_field(name)
    st2 = _mono(3, 2)
    table: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for b3 in product(range(field.order), repeat=4):
        image = _radd(_rmul(field, b3, b3), _rmul(field, st2, b3))
        table.setdefault(image, []).append(b3)
    _LOGGER.debug("%s: additive map on cubic forms has %d images", name, len(table))
    return table


def char2_isotrivial_auts(a: FieldElem, b: FieldElem, field: Field | str | None = None) -> list[Char2Aut]:
    """every substitution preserving y^2 + s t^2 y = x^3 + a t^2 x^2 + b t^6"""
    gf = _search_field(field if field is not None else a.field)
    if a.field != gf or b.field != gf:
        raise FieldError(f"a and b must be {gf.name} elements")
    if not a and not b:
        raise InfiniteAutBroken("a and b are both zero")
    av, bv = a.value, b.value
    units = list(gf.units())

    triples = [
        (lam, mu, beta)
        for lam, mu, beta in product(units, repeat=3)
        if gf.mul(lam, gf.mul(mu, mu)) == 1 and gf.power(beta, 3) == 1
    ]
    _LOGGER.debug("%s: %d (lambda, mu, beta) triples pass the y and x^3 terms", gf.name, len(triples))

    table = _artin_schreier_table(gf.name)
    t2 = _mono(2, 2)
    st2 = _mono(3, 2)
    found: list[Char2Aut] = []
    for lam, mu, beta in triples:
        mu2 = gf.mul(mu, mu)
        beta2 = gf.mul(beta, beta)
        inv_beta2 = gf.inv(beta2)
        twist = gf.mul(av, gf.mul(beta2, mu2)) ^ av
        for b1 in product(range(gf.order), repeat=2):
            rhs = _radd(_rmul(gf, b1, b1), _mono(2, 2, twist))
            b2 = _rscale(gf, inv_beta2, rhs)
            x_term = _radd(_rmul(gf, st2, b1), _rscale(gf, beta, _rmul(gf, b2, b2)))
            if any(x_term):
                continue
            b2_sq = _rmul(gf, b2, b2)
            target = _rmul(gf, b2_sq, b2)
            target = _radd(target, _rscale(gf, gf.mul(av, mu2), _rmul(gf, t2, b2_sq)))
            target = _radd(target, _mono(6, 6, gf.mul(bv, gf.power(mu, 6)) ^ bv))
            for b3 in table.get(target, []):
                candidate = Char2Aut(
                    FieldElem(gf, lam),
                    FieldElem(gf, mu),
                    FieldElem(gf, beta),
                    HomPoly.raw(gf, b1),
                    HomPoly.raw(gf, b2),
                    HomPoly.raw(gf, b3),
                )
                if not _preserves(a, b, candidate):
                    raise InfiniteAutBroken(f"staged solution {candidate.to_dict()} fails the full equation")
                found.append(candidate)
    found.sort(key=lambda aut: aut.key)
    _LOGGER.info("%s: %d isotrivial automorphisms for a=%s b=%s", gf.name, len(found), a, b)
    return found


def char2_isotrivial_auts_bruteforce(a: FieldElem, b: FieldElem) -> list[Char2Aut]:
    """plain enumeration with no assumed identities; feasible over F2 and F4"""
    gf = _search_field(a.field)
    if gf.order > 4:
        raise FieldError("the plain enumeration only runs over F2 and F4")
    if not a and not b:
        raise InfiniteAutBroken("a and b are both zero")
    zero1, zero2, zero3 = (HomPoly.raw(gf, (0,) * n) for n in (2, 3, 4))
    target_y = HomPoly.monomial(gf, 1, 2)
    target_x2 = HomPoly.monomial(gf, 0, 2, a)
    units = [FieldElem(gf, u) for u in gf.units()]
    found = []
    for lam, mu, beta in product(units, repeat=3):
        y_coeff, x3, _, _, _ = transformed_coefficients(a, b, lam, mu, beta, zero1, zero2, zero3)
        if y_coeff != target_y or x3 != gf.one():
            continue
        for b1, b2 in product(product(range(gf.order), repeat=2), product(range(gf.order), repeat=3)):
            h1, h2 = HomPoly.raw(gf, b1), HomPoly.raw(gf, b2)
            # b3 only enters the constant term
            _, _, x2, x1, _ = transformed_coefficients(a, b, lam, mu, beta, h1, h2, zero3)
            if x2 != target_x2 or not x1.is_zero:
                continue
            for b3 in product(range(gf.order), repeat=4):
                candidate = Char2Aut(lam, mu, beta, h1, h2, HomPoly.raw(gf, b3))
                if _preserves(a, b, candidate):
                    found.append(candidate)
    return sorted(found, key=lambda aut: aut.key)


@dataclass(frozen=True)
class Char2Audit:
    solutions: tuple[Char2Aut, ...]

    @property
    def b1_b2_vanish(self) -> bool:
        return all(s.b1.is_zero and s.b2.is_zero for s in self.solutions)

    @property
    def lambda_is_mu_inverse_squared(self) -> bool:
        return all(s.lam * s.mu * s.mu == 1 for s in self.solutions)

    @property
    def beta_cubed_is_one(self) -> bool:
        return all(s.beta**3 == 1 for s in self.solutions)

    @property
    def b3_in_zero_or_st2(self) -> bool:
        allowed = {(0, 0, 0, 0), (0, 0, 1, 0)}
        return all(s.b3.raw_values() in allowed for s in self.solutions)

    @property
    def mu_cubed_is_one(self) -> bool:
        return all(s.mu**3 == 1 for s in self.solutions)

    @property
    def identity_present(self) -> bool:
        return any(
            s.lam == 1 and s.mu == 1 and s.beta == 1 and s.b1.is_zero and s.b2.is_zero and s.b3.is_zero
            for s in self.solutions
        )


def fiber_preserving_quotient(solutions: Iterable[Char2Aut]) -> list[str]:
    """the distinct (b1, b2, b3) left once the torus mu^3 = 1 is divided out"""
    names = []
    for b1, b2, b3 in sorted({s.translation for s in solutions}):
        if any(b1) or any(b2):
            names.append("other")
        elif not any(b3):
            names.append("identity")
        elif b3 == (0, 0, 1, 0):
            names.append("sign involution")
        else:
            names.append("other")
    return names
