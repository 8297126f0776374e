"""
File Chain (see DEVELOPER.md):
Doc Version: v1.0.0
Date Modified: 2026-10-19

- Called by: isometry.py, fibration.py, dualgraph.py, reports.py, tests
- Reads from: None
- Writes to: None
- Calls into: exact.py (smith_normal_form, integer_kernel), networkx, sympy

Purpose: Integral lattices given by Gram matrices. Standard root lattices and
         E10, signature, discriminant groups, even overlattices, roots,
         ADE recognition, saturation and the radical quotient.

Blast Radius: HIGH - the dual-graph replay and the isometry classifier both
              depend on saturation, signature and the radical quotient.

Zeroent Lattices

PURPOSE:
    Root lattices are negative definite (diagonal -2). E10 is U + E8 with the
    two hyperbolic basis vectors first. Vectors are plain integer or Fraction
    sequences in the coordinates of the lattice basis; sublattices carry their
    basis as rows.

KEY EXPORTS:
    - Lattice, RootSystemType, DiscriminantGroup, Overlattice, RadicalQuotient
    - standard_lattice, diagonal_lattice, direct_sum, from_gram
    - signature, discriminant_group, is_p_elementary, even_overlattices,
      has_2elementary_overlattice, has_2elementary_overlattice_bruteforce,
      roots, ade_type, primitive_closure,
      saturate, sublattice, quotient_by_radical
"""

import logging
import math
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import lcm
from typing import Any, Iterator, Sequence

import networkx as nx
import sympy
from sympy import ImmutableMatrix, Matrix

from zeroent.exact import as_rows, int_matrix, integer_kernel, smith_normal_form, to_fraction
from zeroent.models import (
    DegenerateLatticeError,
    InvalidLatticeError,
    NotDefiniteError,
    OverlatticeLimitError,
)

_LOGGER = logging.getLogger(__name__)

Vector = Sequence[int] | Sequence[Fraction]

DEFAULT_ORDER_CAP = 1 << 16
_E_ROOT_COUNTS = {6: 72, 7: 126, 8: 240}
_ROOT_DETS = {"E": {6: 3, 7: 2, 8: 1}}


@dataclass(frozen=True)
class Lattice:
    """integral symmetric bilinear form on Z^rank"""

    gram: ImmutableMatrix
    name: str = field(default="", compare=False)
    _rows: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        gram = self.gram
        if not isinstance(gram, ImmutableMatrix):
            gram = int_matrix(gram)
            object.__setattr__(self, "gram", gram)
        if gram.rows != gram.cols:
            raise InvalidLatticeError(f"Gram matrix is {gram.rows}x{gram.cols}, not square")
        if gram != gram.T:
            raise InvalidLatticeError("Gram matrix is not symmetric")
        object.__setattr__(self, "_rows", tuple(tuple(row) for row in as_rows(gram)))

    @property
    def rank(self) -> int:
        return self.gram.rows

    @property
    def det(self) -> int:
        return int(self.gram.det()) if self.rank else 1

    @property
    def is_even(self) -> bool:
        return all(self._rows[i][i] % 2 == 0 for i in range(self.rank))

    @property
    def is_unimodular(self) -> bool:
        return abs(self.det) == 1

    def dot(self, x: Vector, y: Vector):
        total = 0
        for i, xi in enumerate(x):
            if xi:
                row = self._rows[i]
                total += xi * sum(g * yj for g, yj in zip(row, y) if g)
        return total

    def norm(self, x: Vector):
        return self.dot(x, x)

    def to_json(self) -> dict[str, Any]:
        return {"rank": self.rank, "gram": [list(row) for row in self._rows]}

    def __str__(self) -> str:
        return self.name or f"Lattice(rank={self.rank}, det={self.det})"


def from_gram(rows: Sequence[Sequence[int]], name: str = "") -> Lattice:
    try:
        return Lattice(int_matrix(rows), name)
    except (ValueError, TypeError) as exc:
        raise InvalidLatticeError(str(exc)) from exc


def lattice_from_json(data: dict[str, Any]) -> Lattice:
    """{"rank": n, "gram": [[...]]}, or {"lattice": "E10"}"""
    if "lattice" in data:
        return standard_lattice(data["lattice"])
    if "gram" not in data:
        raise InvalidLatticeError("lattice JSON needs a 'gram' entry")
    lattice = from_gram(data["gram"])
    if "rank" in data and int(data["rank"]) != lattice.rank:
        raise InvalidLatticeError(f"rank {data['rank']} does not match Gram size {lattice.rank}")
    return lattice


def diagonal_lattice(values: Sequence[int], name: str = "") -> Lattice:
    n = len(values)
    return from_gram([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], name)


def direct_sum(*lattices: Lattice) -> Lattice:
    parts = [l.gram for l in lattices if l.rank]
    name = " + ".join(str(l) for l in lattices)
    if not parts:
        return Lattice(ImmutableMatrix.zeros(0, 0), name)
    return Lattice(ImmutableMatrix(sympy.diag(*parts)), name)


def dynkin_edges(family: str, n: int) -> list[tuple[int, int]]:
    """0-based Dynkin adjacency; D and E branch off the chain"""
    if family == "A":
        return [(i, i + 1) for i in range(n - 1)]
    if family == "D":
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if family == "E":
        return [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
    raise InvalidLatticeError(f"unknown root family {family}")


def root_lattice(family: str, n: int) -> Lattice:
    gram = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in dynkin_edges(family, n):
        gram[i][j] = gram[j][i] = 1
    return from_gram(gram, f"{family}{n}")


def standard_lattice(name: str) -> Lattice:
    """U, A_n, D_n (n >= 4), E6, E7, E8 or E10"""
    match = re.fullmatch(r"\s*([UADE])(\d*)\s*", name or "")
    if not match:
        raise InvalidLatticeError(f"unknown lattice name {name!r}")
    family, digits = match.group(1), match.group(2)
    if family == "U":
        if digits:
            raise InvalidLatticeError(f"unknown lattice name {name!r}")
        return from_gram([[0, 1], [1, 0]], "U")
    if not digits:
        raise InvalidLatticeError(f"lattice {name!r} needs a rank")
    n = int(digits)
    if family == "A" and n >= 1:
        return root_lattice("A", n)
    if family == "D" and n >= 4:
        return root_lattice("D", n)
    if family == "E" and n in (6, 7, 8):
        return root_lattice("E", n)
    if family == "E" and n == 10:
        e10 = direct_sum(standard_lattice("U"), standard_lattice("E8"))
        return Lattice(e10.gram, "E10")
    raise InvalidLatticeError(f"unknown lattice name {name!r}")


def signature(l: Lattice) -> tuple[int, int, int]:
    """(positive, negative, zero) by symmetric Gaussian reduction over Q"""
    n = l.rank
    a = [[Fraction(entry) for entry in row] for row in l._rows]
    positive = negative = 0
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if a[i][i] != 0), None)
        if pivot_row is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0), None)
            if pair is None:
                return positive, negative, n - k
            i, j = pair
            # x_i -> x_i + x_j makes the diagonal 2 a_ij
            for t in range(n):
                a[i][t] += a[j][t]
            for t in range(n):
                a[t][i] += a[t][j]
            pivot_row = i
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            for row in a:
                row[k], row[pivot_row] = row[pivot_row], row[k]
        pivot = a[k][k]
        if pivot > 0:
            positive += 1
        else:
            negative += 1
        for i in range(k + 1, n):
            factor = a[i][k] / pivot
            if factor:
                for j in range(k + 1, n):
                    a[i][j] -= factor * a[k][j]
            a[i][k] = Fraction(0)
        for j in range(k + 1, n):
            a[k][j] = Fraction(0)
    return positive, negative, 0


def _mod(value: Fraction, modulus: int) -> Fraction:
    return value - modulus * math.floor(value / modulus)


@dataclass(frozen=True)
class DiscriminantGroup:
    """L*/L with its discriminant quadratic form, elements as coefficient tuples"""

    lattice: Lattice
    invariant_factors: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...]
    qvalues: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    def elements(self) -> Iterator[tuple[int, ...]]:
        return product(*(range(d) for d in self.invariant_factors))

    def reduce(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        return tuple(c % d for c, d in zip(coeffs, self.invariant_factors))

    def vector(self, coeffs: Sequence[int]) -> tuple[Fraction, ...]:
        total = [Fraction(0)] * self.lattice.rank
        for c, gen in zip(coeffs, self.generators):
            if c:
                total = [t + c * g for t, g in zip(total, gen)]
        return tuple(total)

    def q(self, coeffs: Sequence[int]) -> Fraction:
        """discriminant form in Q/2Z"""
        return _mod(Fraction(self.lattice.norm(self.vector(coeffs))), 2)

    def b(self, left: Sequence[int], right: Sequence[int]) -> Fraction:
        """discriminant bilinear form in Q/Z"""
        return _mod(Fraction(self.lattice.dot(self.vector(left), self.vector(right))), 1)

    def element_order(self, coeffs: Sequence[int]) -> int:
        return lcm(1, *(d // math.gcd(c, d) for c, d in zip(coeffs, self.invariant_factors)))


def discriminant_group(l: Lattice) -> DiscriminantGroup:
    if l.det == 0:
        raise DegenerateLatticeError(f"{l} is degenerate, no discriminant group")
    s, _, v = smith_normal_form(l.gram)
    factors, generators = [], []
    for i in range(l.rank):
        d = int(s[i, i])
        if d > 1:
            factors.append(d)
            generators.append(tuple(Fraction(int(v[j, i]), d) for j in range(l.rank)))
    qvalues = tuple(_mod(Fraction(l.norm(gen)), 2) for gen in generators)
    return DiscriminantGroup(l, tuple(factors), tuple(generators), qvalues)


def is_p_elementary(l: Lattice, p: int) -> bool:
    if l.det == 0:
        raise DegenerateLatticeError(f"{l} is degenerate")
    return all(p % d == 0 for d in discriminant_group(l).invariant_factors)


@dataclass(frozen=True)
class Overlattice:
    """finite-index overlattice; basis rows in the coordinates of the sublattice"""

    lattice: Lattice
    basis: tuple[tuple[Fraction, ...], ...]
    index: int


def _rational_row_basis(vectors: Sequence[Sequence[Fraction]], n: int) -> list[list[Fraction]]:
    """Z-basis of the group generated by rational vectors"""
    scale = lcm(1, *(to_fraction(x).denominator for vec in vectors for x in vec))
    rows = [[int(to_fraction(x) * scale) for x in vec] for vec in vectors]
    s, _, v = smith_normal_form(int_matrix(rows))
    v_inv = Matrix(v).inv()
    basis = []
    for i in range(min(s.shape)):
        d = int(s[i, i])
        if d == 0:
            break
        basis.append([Fraction(d * int(v_inv[i, j]), scale) for j in range(n)])
    return basis


def _gram_of_basis(l: Lattice, basis: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    gram = []
    for x in basis:
        row = []
        for y in basis:
            value = Fraction(l.dot(x, y))
            if value.denominator != 1:
                raise InvalidLatticeError("overlattice is not integral")
            row.append(int(value))
        gram.append(row)
    return gram


def _subgroup_closure(disc: DiscriminantGroup, group: frozenset, element: tuple[int, ...]) -> frozenset:
    multiples = [disc.reduce([k * c for c in element]) for k in range(disc.element_order(element))]
    return frozenset(disc.reduce([h + m for h, m in zip(base, mult)]) for base in group for mult in multiples)


def even_overlattices(l: Lattice, order_cap: int = DEFAULT_ORDER_CAP) -> list[Overlattice]:
    """all even overlattices of finite index, l itself first"""
    if not l.is_even:
        raise InvalidLatticeError(f"{l} is not even")
    disc = discriminant_group(l)
    if disc.order > order_cap:
        raise OverlatticeLimitError(f"discriminant order {disc.order} exceeds cap {order_cap}")
    zero = tuple(0 for _ in disc.invariant_factors)
    isotropic = [c for c in disc.elements() if c != zero and disc.q(c) == 0]
    start = frozenset({zero})
    seen = {start}
    queue: deque[tuple[frozenset, tuple]] = deque([(start, ())])
    found: list[Overlattice] = []
    identity = [[Fraction(int(i == j)) for j in range(l.rank)] for i in range(l.rank)]
    while queue:
        group, gens = queue.popleft()
        vectors = identity + [list(disc.vector(g)) for g in gens]
        basis = _rational_row_basis(vectors, l.rank) if gens else identity
        over = from_gram(_gram_of_basis(l, basis), f"{l}[{len(group)}]")
        found.append(Overlattice(over, tuple(tuple(row) for row in basis), len(group)))
        for element in isotropic:
            if element in group or any(disc.b(element, g) != 0 for g in gens):
                continue
            bigger = _subgroup_closure(disc, group, element)
            if bigger not in seen:
                seen.add(bigger)
                queue.append((bigger, gens + (element,)))
    _LOGGER.debug("%s: %d isotropic elements, %d even overlattices", l, len(isotropic), len(found))
    return found


def has_2elementary_overlattice(l: Lattice, order_cap: int = DEFAULT_ORDER_CAP) -> bool:
    return any(is_p_elementary(over.lattice, 2) for over in even_overlattices(l, order_cap))


def _generated(disc: DiscriminantGroup, gens: Sequence[tuple[int, ...]]) -> frozenset:
    group = frozenset({disc.reduce([0] * len(disc.invariant_factors))})
    for g in gens:
        group = _subgroup_closure(disc, group, g)
    return group


def has_2elementary_overlattice_bruteforce(l: Lattice, order_cap: int = DEFAULT_ORDER_CAP) -> bool:
    """every subgroup of L*/L generated by isotropic elements, tested for a 2-elementary H^perp/H"""
    disc = discriminant_group(l)
    if disc.order > order_cap:
        raise OverlatticeLimitError(f"discriminant order {disc.order} exceeds cap {order_cap}")
    elements = list(disc.elements())
    isotropic = [c for c in elements if disc.q(c) == 0]
    tried = set()
    for gens in combinations_with_replacement(isotropic, max(1, len(disc.invariant_factors))):
        group = _generated(disc, gens)
        if group in tried:
            continue
        tried.add(group)
        if any(disc.q(h) != 0 for h in group):
            continue
        perp = [x for x in elements if all(disc.b(x, h) == 0 for h in group)]
        if all(disc.reduce([2 * c for c in x]) in group for x in perp):
            return True
    _LOGGER.debug("%s: %d isotropic subgroups, none 2-elementary", l, len(tried))
    return False


def _fincke_pohst(q: list[list[Fraction]], bound: Fraction) -> list[tuple[int, ...]]:
    """all non-zero x with x^T q x == bound for a positive definite q"""
    n = len(q)
    a = [row[:] for row in q]
    diag = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        diag[i] = a[i][i]
        if diag[i] <= 0:
            raise NotDefiniteError("form is not positive definite")
        for j in range(i + 1, n):
            mu[i][j] = a[i][j] / a[i][i]
        for k in range(i + 1, n):
            for m in range(k, n):
                a[k][m] -= a[i][k] * a[i][m] / a[i][i]
                a[m][k] = a[k][m]

    found: list[tuple[int, ...]] = []
    x = [0] * n

    def descend(i: int, remaining: Fraction):
        center = -sum((mu[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        radius = math.sqrt(float(remaining / diag[i]))
        lo = math.floor(float(center) - radius) - 1
        hi = math.ceil(float(center) + radius) + 1
        for value in range(lo, hi + 1):
            spent = diag[i] * (value - center) ** 2
            if spent > remaining:
                continue
            x[i] = value
            if i == 0:
                if remaining == spent and any(x):
                    found.append(tuple(x))
            else:
                descend(i - 1, remaining - spent)
        x[i] = 0

    if n:
        descend(n - 1, bound)
    return found


def roots(l: Lattice) -> list[tuple[int, ...]]:
    """all v with v.v = -2, sorted lexicographically"""
    if l.rank == 0:
        return []
    if signature(l) != (0, l.rank, 0):
        raise NotDefiniteError(f"{l} is not negative definite")
    q = [[Fraction(-entry) for entry in row] for row in l._rows]
    return sorted(_fincke_pohst(q, Fraction(2)))


@dataclass(frozen=True, order=True)
class RootSystemType:
    """multiset of irreducible ADE components"""

    components: tuple[tuple[str, int], ...] = ()

    @classmethod
    def of(cls, components) -> "RootSystemType":
        normal: list[tuple[str, int]] = []
        for family, rank in components:
            if family == "D" and rank == 2:
                normal += [("A", 1), ("A", 1)]
            elif family == "D" and rank == 3:
                normal.append(("A", 3))
            elif rank > 0:
                normal.append((family, rank))
        return cls(tuple(sorted(normal)))

    @classmethod
    def parse(cls, text: str) -> "RootSystemType":
        if text.strip() in ("", "0"):
            return cls()
        parts = []
        for token in text.split("+"):
            match = re.fullmatch(r"\s*([ADE])(\d+)\s*", token)
            if not match:
                raise InvalidLatticeError(f"bad root system {text!r}")
            parts.append((match.group(1), int(match.group(2))))
        return cls.of(parts)

    def __add__(self, other: "RootSystemType") -> "RootSystemType":
        return RootSystemType.of(self.components + other.components)

    def __str__(self) -> str:
        return "+".join(f"{family}{rank}" for family, rank in self.components) or "0"

    @property
    def rank(self) -> int:
        return sum(rank for _, rank in self.components)

    @property
    def det(self) -> int:
        """|det| of the root lattice"""
        total = 1
        for family, rank in self.components:
            if family == "A":
                total *= rank + 1
            elif family == "D":
                total *= 4
            else:
                total *= _ROOT_DETS["E"][rank]
        return total

    def lattice(self) -> Lattice:
        return direct_sum(*(root_lattice(family, rank) for family, rank in self.components))


def identify_component(rank: int, count: int) -> tuple[str, int]:
    """(rank, number of roots) of an irreducible root system -> family"""
    if count == rank * (rank + 1):
        return "A", rank
    if rank >= 4 and count == 2 * rank * (rank - 1):
        return "D", rank
    if _E_ROOT_COUNTS.get(rank) == count:
        return "E", rank
    raise InvalidLatticeError(f"no root system of rank {rank} with {count} roots")


def ade_type(l: Lattice) -> RootSystemType:
    """type of the root sublattice of a negative definite lattice"""
    vectors = roots(l)
    graph = nx.Graph()
    graph.add_nodes_from(range(len(vectors)))
    images = [[sum(g * x for g, x in zip(row, vec)) for row in l._rows] for vec in vectors]
    for i, image in enumerate(images):
        for j in range(i + 1, len(vectors)):
            if any(a * b for a, b in zip(image, vectors[j])):
                graph.add_edge(i, j)
    components = []
    for nodes in nx.connected_components(graph):
        members = [vectors[i] for i in nodes]
        rank = Matrix(members).rank()
        components.append(identify_component(rank, len(members)))
    return RootSystemType.of(components)


def saturate(vectors: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """basis of (Q-span of vectors) intersected with Z^n"""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    s, _, v = smith_normal_form(int_matrix(rows))
    rank = sum(1 for i in range(min(s.shape)) if s[i, i] != 0)
    v_inv = Matrix(v).inv()
    return [[int(v_inv[i, j]) for j in range(n)] for i in range(rank)]


def sublattice(ambient: Lattice, basis: Sequence[Sequence[int]], name: str = "") -> Lattice:
    if not basis:
        return Lattice(ImmutableMatrix.zeros(0, 0), name)
    return from_gram([[ambient.dot(x, y) for y in basis] for x in basis], name)


def primitive_closure(ambient: Lattice, span: Sequence[Sequence[int]]) -> Lattice:
    """saturation of the span with the induced Gram"""
    return sublattice(ambient, saturate(span, ambient.rank))


@dataclass(frozen=True)
class RadicalQuotient:
    """non-degenerate quotient L / rad(L) and the integral projection to it"""

    lattice: Lattice
    projection: tuple[tuple[int, ...], ...]
    radical: tuple[tuple[int, ...], ...]

    def project(self, x: Sequence[int]) -> tuple[int, ...]:
        k = len(self.radical)
        return tuple(
            sum(xi * self.projection[i][j] for i, xi in enumerate(x) if xi)
            for j in range(k, len(self.projection))
        ) if self.projection else ()


def radical_basis(l: Lattice) -> list[list[int]]:
    return saturate(integer_kernel(l.gram), l.rank)


def quotient_by_radical(l: Lattice) -> RadicalQuotient:
    n = l.rank
    radical = radical_basis(l)
    if not radical:
        identity = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return RadicalQuotient(l, identity, ())
    _, _, v = smith_normal_form(int_matrix(radical))
    v_inv = Matrix(v).inv()
    k = len(radical)
    complement = [[int(v_inv[i, j]) for j in range(n)] for i in range(k, n)]
    quotient = sublattice(l, complement, f"{l}/rad")
    return RadicalQuotient(
        quotient,
        tuple(tuple(int(v[i, j]) for j in range(n)) for i in range(n)),
        tuple(tuple(row) for row in radical),
    )
