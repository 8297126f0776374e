"""
File Chain (see DEVELOPER.md):
Doc Version: v1.0.0
Date Modified: 2026-10-19

- Called by: weierstrass.py, reports.py (bp and char2 commands), tests
- Reads from: None
- Writes to: None
- Calls into: sympy (QQ_I, sympify)

Purpose: Exact scalar fields for the Weierstrass computations: Q, Q(i) and
         GF(2^k) in polynomial basis.

Blast Radius: LOW - only weierstrass.py builds on these fields.

Zeroent Fields

PURPOSE:
    FieldElem wraps a raw value together with the Field it lives in. Q values
    are Fractions, Q(i) values are sympy QQ_I elements and GF(2^k) values are
    ints whose bits are the coefficients of the polynomial basis. Arithmetic
    between different fields raises FieldError.

KEY EXPORTS:
    - Field, RationalField, GaussianField, BinaryField, FieldElem
    - get_field(name), FIELD_NAMES
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterator

import sympy
from sympy import QQ, QQ_I
from sympy.polys.polyerrors import CoercionFailed

from zeroent.exact import to_fraction
from zeroent.models import FieldError

_LOGGER = logging.getLogger(__name__)

# irreducible moduli, bit i is the coefficient of z^i
BINARY_MODULI = {
    "F2": 0b11,
    "F4": 0b111,
    "F16": 0b10011,
    "F256": 0x11B,
}


class Field:
    name: str = ""
    characteristic: int = 0

    def zero(self) -> "FieldElem":
        return FieldElem(self, self._raw_zero())

    def one(self) -> "FieldElem":
        return FieldElem(self, self._raw_one())

    def from_int(self, n: int) -> "FieldElem":
        """image of an integer under Z -> field"""
        raise NotImplementedError

    def parse(self, text: str) -> "FieldElem":
        raise NotImplementedError

    def _raw_zero(self) -> Any:
        raise NotImplementedError

    def _raw_one(self) -> Any:
        raise NotImplementedError

    def add(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        return x == self._raw_zero()

    def to_str(self, x) -> str:
        return str(x)

    def sort_key(self, x) -> tuple:
        return (x,)

    def __repr__(self) -> str:
        return self.name

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.name == self.name

    def __hash__(self) -> int:
        return hash(self.name)


class RationalField(Field):
    name = "Q"

    def from_int(self, n: int) -> "FieldElem":
        return FieldElem(self, Fraction(n))

    def parse(self, text: str) -> "FieldElem":
        try:
            return FieldElem(self, Fraction(str(text).strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"not a rational number: {text!r}") from exc

    def _raw_zero(self):
        return Fraction(0)

    def _raw_one(self):
        return Fraction(1)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def inv(self, x):
        if x == 0:
            raise FieldError("division by zero in Q")
        return 1 / x


class GaussianField(Field):
    """Q(i) on top of the sympy Gaussian-rational domain"""

    name = "Qi"

    def from_int(self, n: int) -> "FieldElem":
        return FieldElem(self, QQ_I(n, 0))

    def from_rational(self, value: Fraction) -> "FieldElem":
        return FieldElem(self, QQ_I.convert(sympy.Rational(value.numerator, value.denominator)))

    def parse(self, text: str) -> "FieldElem":
        try:
            expr = sympy.sympify(str(text).replace("i", "I"))
            return FieldElem(self, QQ_I.from_sympy(expr))
        except (sympy.SympifyError, CoercionFailed, TypeError) as exc:
            raise FieldError(f"not a Gaussian rational: {text!r}") from exc

    @property
    def i(self) -> "FieldElem":
        return FieldElem(self, QQ_I(0, 1))

    def _raw_zero(self):
        return QQ_I.zero

    def _raw_one(self):
        return QQ_I.one

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def inv(self, x):
        if not x:
            raise FieldError("division by zero in Q(i)")
        norm = x.x * x.x + x.y * x.y
        return QQ_I(x.x / norm, -x.y / norm)

    def is_zero(self, x) -> bool:
        return not x

    def to_str(self, x) -> str:
        return str(QQ_I.to_sympy(x)).replace("I", "i")

    def sort_key(self, x) -> tuple:
        return (to_fraction(QQ.to_sympy(x.x)), to_fraction(QQ.to_sympy(x.y)))


class BinaryField(Field):
    """GF(2^k) with elements as ints, multiplication carry-less then reduced"""

    characteristic = 2

    def __init__(self, name: str, modulus: int):
        self.name = name
        self.modulus = modulus
        self.degree = modulus.bit_length() - 1
        self.order = 1 << self.degree

    def from_int(self, n: int) -> "FieldElem":
        return FieldElem(self, n & 1)

    def element(self, bits: int) -> "FieldElem":
        if not 0 <= bits < self.order:
            raise FieldError(f"{bits} is not an element of {self.name}")
        return FieldElem(self, bits)

    def parse(self, text: str) -> "FieldElem":
        try:
            return self.element(int(str(text).strip(), 0))
        except ValueError as exc:
            raise FieldError(f"not an element of {self.name}: {text!r}") from exc

    def _raw_zero(self):
        return 0

    def _raw_one(self):
        return 1

    def add(self, x, y):
        return x ^ y

    def neg(self, x):
        return x

    def _multiply_without_reducing(self, f: int, v: int) -> int:
        result = 0
        while v:
            if v & 1:
                result ^= f
            f <<= 1
            v >>= 1
        return result

    def _reduce(self, m: int) -> int:
        while m.bit_length() > self.degree:
            m ^= self.modulus << (m.bit_length() - 1 - self.degree)
        return m

    @cached_property
    def _table(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(self._reduce(self._multiply_without_reducing(f, v)) for v in range(self.order))
            for f in range(self.order)
        )

    def mul(self, x, y):
        if self.order <= 256:
            return self._table[x][y]
        return self._reduce(self._multiply_without_reducing(x, y))

    def power(self, x: int, n: int) -> int:
        result = 1
        for _ in range(n):
            result = self.mul(result, x)
        return result

    def inv(self, x):
        if x == 0:
            raise FieldError(f"division by zero in {self.name}")
        return self.power(x, self.order - 2)

    def sqrt(self, x: int) -> int:
        """inverse of the Frobenius x -> x^2"""
        for _ in range(self.degree - 1):
            x = self.mul(x, x)
        return x

    def units(self) -> Iterator[int]:
        return iter(range(1, self.order))

    def to_str(self, x) -> str:
        return hex(x) if self.degree > 1 else str(x)


@dataclass(frozen=True)
class FieldElem:
    field: Field
    value: Any

    def _coerce(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldError(f"cannot mix {self.field.name} and {other.field.name}")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        raise FieldError(f"cannot combine {self.field.name} element with {type(other).__name__}")

    def __add__(self, other) -> "FieldElem":
        other = self._coerce(other)
        return FieldElem(self.field, self.field.add(self.value, other.value))

    __radd__ = __add__

    def __neg__(self) -> "FieldElem":
        return FieldElem(self.field, self.field.neg(self.value))

    def __sub__(self, other) -> "FieldElem":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "FieldElem":
        return self._coerce(other) - self

    def __mul__(self, other) -> "FieldElem":
        other = self._coerce(other)
        return FieldElem(self.field, self.field.mul(self.value, other.value))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        return FieldElem(self.field, self.field.inv(self.value))

    def __truediv__(self, other) -> "FieldElem":
        return self * self._coerce(other).inverse()

    def __pow__(self, n: int) -> "FieldElem":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, FieldElem) or other.field != self.field:
            return NotImplemented
        return self.field.is_zero(self.field.add(self.value, self.field.neg(other.value)))

    def __hash__(self) -> int:
        return hash((self.field.name, self.field.to_str(self.value)))

    def __bool__(self) -> bool:
        return not self.field.is_zero(self.value)

    def __str__(self) -> str:
        return self.field.to_str(self.value)

    @property
    def sort_key(self) -> tuple:
        return self.field.sort_key(self.value)


Q = RationalField()
Qi = GaussianField()
_BINARY = {name: BinaryField(name, modulus) for name, modulus in BINARY_MODULI.items()}
FIELD_NAMES = ("Q", "Qi") + tuple(BINARY_MODULI)


def get_field(name: str) -> Field:
    if name == "Q":
        return Q
    if name == "Qi":
        return Qi
    if name in _BINARY:
        return _BINARY[name]
    raise FieldError(f"unknown field {name!r}, choose from {', '.join(FIELD_NAMES)}")


def to_gaussian(x: FieldElem) -> FieldElem:
    """embed Q into Q(i); Q(i) elements pass through"""
    if x.field == Qi:
        return x
    if x.field == Q:
        return Qi.from_rational(x.value)
    raise FieldError(f"{x.field.name} does not embed in Q(i)")
