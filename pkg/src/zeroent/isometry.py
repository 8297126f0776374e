"""
File Chain (see DEVELOPER.md):
Doc Version: v1.0.0
Date Modified: 2026-10-19

- Called by: reports.py (entropy command), tests
- Reads from: data/fixtures/*.json (bundled isometries)
- Writes to: None
- Calls into: exact.py, lattice.py, sympy

Purpose: Elliptic / parabolic / hyperbolic classification of isometries of a
         signature-(1, n) lattice, exact entropy, Eichler transvections and
         invariant / coinvariant lattices.

Blast Radius: MEDIUM - only the entropy command and its tests consume this.

Zeroent Isometries

PURPOSE:
    An isometry is an integer matrix whose columns are the images of the basis
    vectors. Classification peels cyclotomic factors off the characteristic
    polynomial. A remaining factor means positive entropy; otherwise g^N with
    N the lcm of the cyclotomic orders decides finite order versus parabolic.

NOTES:
    The fixed ray of a parabolic isometry is oriented by a reference vector of
    positive norm. Nefness of that ray is not decided by lattice data and is
    always reported as unverifiable.
"""

import json
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from importlib.resources import files
from typing import Any, Sequence

import sympy
from sympy import ImmutableMatrix, Matrix, Poly

from zeroent.exact import (
    DEFAULT_WIDTH,
    Interval,
    as_rows,
    char_poly,
    coefficients,
    cyclotomic,
    fraction_to_float,
    int_matrix,
    integer_kernel,
    is_reciprocal,
    largest_real_root,
)
from zeroent.lattice import (
    Lattice,
    lattice_from_json,
    radical_basis,
    saturate,
    signature,
    sublattice,
)
from zeroent.models import (
    NotAnIsometryError,
    ReportInputError,
    SignatureError,
    TransvectionError,
)

_LOGGER = logging.getLogger(__name__)

FIXTURES = ("identity-e10", "transvection-e10", "hyperbolic-e10")


class IsometryKind(str, Enum):
    ELLIPTIC = "Elliptic"
    PARABOLIC = "Parabolic"
    HYPERBOLIC = "Hyperbolic"


@dataclass(frozen=True)
class Entropy:
    """log of the spectral radius; min_poly None encodes zero"""

    min_poly: Poly | None = None
    interval: Interval | None = None

    @property
    def is_zero(self) -> bool:
        return self.min_poly is None

    @property
    def spectral_radius(self) -> float:
        if self.interval is None:
            return 1.0
        lo, hi = self.interval
        return fraction_to_float((lo + hi) / 2)

    @property
    def approx(self) -> float:
        return math.log(self.spectral_radius)

    def to_dict(self) -> dict[str, Any]:
        if self.is_zero:
            return {"zero": True, "min_poly": None, "interval": None, "entropy_display": 0.0}
        lo, hi = self.interval
        return {
            "zero": False,
            "min_poly": coefficients(self.min_poly),
            "interval": [str(lo), str(hi)],
            "spectral_radius_display": self.spectral_radius,
            "entropy_display": self.approx,
        }


@dataclass(frozen=True)
class IsometryClass:
    kind: IsometryKind
    order: int | None
    entropy: Entropy
    fixed_isotropic: tuple[int, ...] | None = None
    fixed_sign: int = 1
    nef_verified: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "order": self.order if self.order is not None else "infinity",
            "entropy": self.entropy.to_dict(),
            "fixed_isotropic": list(self.fixed_isotropic) if self.fixed_isotropic else None,
            "fixed_sign": self.fixed_sign if self.fixed_isotropic else None,
            "nef": "unverifiable",
        }


@dataclass(frozen=True)
class LatticeIsometry:
    lattice: Lattice
    matrix: ImmutableMatrix

    def __post_init__(self):
        matrix = self.matrix
        if not isinstance(matrix, ImmutableMatrix):
            matrix = int_matrix(matrix)
            object.__setattr__(self, "matrix", matrix)
        n = self.lattice.rank
        if matrix.shape != (n, n):
            raise NotAnIsometryError(f"matrix is {matrix.rows}x{matrix.cols}, lattice has rank {n}")
        if matrix.T * self.lattice.gram * matrix != self.lattice.gram:
            raise NotAnIsometryError("matrix does not preserve the Gram form")

    @classmethod
    def identity(cls, lattice: Lattice) -> "LatticeIsometry":
        return cls(lattice, ImmutableMatrix.eye(lattice.rank))

    def __matmul__(self, other: "LatticeIsometry") -> "LatticeIsometry":
        if other.lattice != self.lattice:
            raise NotAnIsometryError("composition across different lattices")
        return LatticeIsometry(self.lattice, self.matrix * other.matrix)

    def inverse(self) -> "LatticeIsometry":
        if abs(self.matrix.det()) != 1:
            raise NotAnIsometryError("matrix is not unimodular")
        return LatticeIsometry(self.lattice, ImmutableMatrix(Matrix(self.matrix).inv()))

    def power(self, n: int) -> "LatticeIsometry":
        if n < 0:
            return self.inverse().power(-n)
        return LatticeIsometry(self.lattice, self.matrix**n)

    def apply(self, x: Sequence[int]) -> tuple[int, ...]:
        rows = as_rows(self.matrix)
        return tuple(sum(a * b for a, b in zip(row, x)) for row in rows)

    @property
    def is_identity(self) -> bool:
        return self.matrix == ImmutableMatrix.eye(self.lattice.rank)

    def to_json(self) -> dict[str, Any]:
        return {"gram": self.lattice.to_json()["gram"], "matrix": as_rows(self.matrix)}


def isometry_from_json(data: dict[str, Any]) -> LatticeIsometry:
    """{"gram": ..., "matrix": ...}; "lattice": "E10" may replace the Gram"""
    if not isinstance(data, dict) or "matrix" not in data:
        raise ReportInputError("isometry JSON needs a 'matrix' entry")
    lattice = lattice_from_json(data)
    try:
        matrix = int_matrix(data["matrix"])
    except (TypeError, ValueError) as exc:
        raise ReportInputError(f"bad isometry matrix: {exc}") from exc
    return LatticeIsometry(lattice, matrix)


def load_fixture(name: str) -> LatticeIsometry:
    if name not in FIXTURES:
        raise ReportInputError(f"unknown fixture {name!r}, choose from {', '.join(FIXTURES)}")
    text = (files("zeroent") / "data" / "fixtures" / f"{name}.json").read_text(encoding="utf-8")
    return isometry_from_json(json.loads(text))


def eichler_transvection(l: Lattice, f: Sequence[int], e: Sequence[int]) -> LatticeIsometry:
    """x -> x + (x.f)e - (x.e)f - 1/2 (e.e)(x.f)f"""
    if not l.is_even:
        raise TransvectionError(f"{l} is not even")
    if l.norm(f) != 0:
        raise TransvectionError("f is not isotropic")
    if l.dot(e, f) != 0:
        raise TransvectionError("e is not orthogonal to f")
    half_ee = l.norm(e) // 2
    n = l.rank
    columns = []
    for i in range(n):
        unit = [int(i == j) for j in range(n)]
        xf = l.dot(unit, f)
        xe = l.dot(unit, e)
        columns.append([unit[j] + xf * e[j] - xe * f[j] - half_ee * xf * f[j] for j in range(n)])
    matrix = int_matrix([[columns[j][i] for j in range(n)] for i in range(n)])
    return LatticeIsometry(l, matrix)


def reference_vector(l: Lattice) -> tuple[int, ...]:
    """first of e_i, e_i + e_j, e_i - e_j with positive norm"""
    n = l.rank
    units = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    for unit in units:
        if l.norm(unit) > 0:
            return unit
    for i in range(n):
        for j in range(i + 1, n):
            for sign in (1, -1):
                candidate = tuple(a + sign * b for a, b in zip(units[i], units[j]))
                if l.norm(candidate) > 0:
                    return candidate
    raise SignatureError(f"no reference vector of positive norm found in {l}")


def _fixed_kernel(matrix: ImmutableMatrix, n: int) -> list[list[int]]:
    return saturate(integer_kernel(matrix - ImmutableMatrix.eye(n)), n)


def invariant_lattice(g: LatticeIsometry) -> Lattice:
    """saturated kernel of g - I with the induced form"""
    return sublattice(g.lattice, _fixed_kernel(g.matrix, g.lattice.rank), "invariant")


def coinvariant_lattice(g: LatticeIsometry) -> Lattice:
    """orthogonal complement of the invariant lattice"""
    l = g.lattice
    basis = _fixed_kernel(g.matrix, l.rank)
    if not basis:
        complement = [[int(i == j) for j in range(l.rank)] for i in range(l.rank)]
    else:
        pairing = int_matrix(basis) * l.gram
        complement = saturate(integer_kernel(pairing), l.rank)
    return sublattice(l, complement, "coinvariant")


def _fixed_isotropic(g: LatticeIsometry, power: ImmutableMatrix) -> tuple[tuple[int, ...], int]:
    l = g.lattice
    basis = _fixed_kernel(power, l.rank)
    invariant = sublattice(l, basis)
    radical = radical_basis(invariant)
    if len(radical) != 1:
        raise SignatureError(f"radical of the invariant lattice has rank {len(radical)}, expected 1")
    vector = [sum(c * row[j] for c, row in zip(radical[0], basis)) for j in range(l.rank)]
    content = math.gcd(*vector)
    vector = [entry // content for entry in vector]
    if l.dot(vector, reference_vector(l)) < 0:
        vector = [-entry for entry in vector]
    image = list(g.apply(vector))
    sign = 1 if image == vector else -1
    return tuple(vector), sign


def _peel_cyclotomic(p: Poly, rank: int) -> tuple[Poly, list[int]]:
    orders = []
    m = 1
    while m <= 2 * rank * rank + 2:
        if sympy.totient(m) <= rank:
            phi = cyclotomic(m)
            while p.degree() >= phi.degree() and p.rem(phi).is_zero:
                p = p.exquo(phi)
                orders.append(m)
        m += 1
    return p, orders


def classify(g: LatticeIsometry, width: Fraction = DEFAULT_WIDTH) -> IsometryClass:
    l = g.lattice
    positive, _, zero = signature(l)
    if positive != 1 or zero != 0:
        raise SignatureError(f"{l} has signature {signature(l)}, expected (1, n, 0)")
    remainder, orders = _peel_cyclotomic(char_poly(g.matrix), l.rank)
    if remainder.degree() > 0:
        if not is_reciprocal(remainder):
            raise NotAnIsometryError(f"non-reciprocal factor {remainder.as_expr()} after cyclotomic peeling")
        salem = Poly(remainder.sqf_part().as_expr(), remainder.gens[0], domain="ZZ")
        interval = largest_real_root(salem, width)
        if interval is None:
            raise NotAnIsometryError(f"factor {salem.as_expr()} has no real root above 1")
        _LOGGER.info("hyperbolic isometry, spectral radius root of %s", salem.as_expr())
        return IsometryClass(IsometryKind.HYPERBOLIC, None, Entropy(salem, interval))
    period = math.lcm(1, *orders)
    identity = ImmutableMatrix.eye(l.rank)
    power = g.matrix**period
    if power == identity:
        order = min(d for d in sympy.divisors(period) if g.matrix**d == identity)
        return IsometryClass(IsometryKind.ELLIPTIC, order, Entropy())
    fixed, sign = _fixed_isotropic(g, power)
    _LOGGER.info("parabolic isometry fixing the isotropic ray %s", fixed)
    return IsometryClass(IsometryKind.PARABOLIC, None, Entropy(), fixed, sign)


def entropy(g: LatticeIsometry, width: Fraction = DEFAULT_WIDTH) -> Entropy:
    return classify(g, width).entropy
