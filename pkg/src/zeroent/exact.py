"""
File Chain (see DEVELOPER.md):
Doc Version: v1.0.0
Date Modified: 2026-10-19

- Called by: lattice.py, isometry.py, dualgraph.py, weierstrass.py, tests
- Reads from: None
- Writes to: None
- Calls into: sympy (Matrix, Poly, sturm, divisors, totient)

Purpose: Exact integer/rational substrate. Smith normal form with transforms,
         characteristic and cyclotomic polynomials, real-root isolation above 1.

Blast Radius: HIGH - every lattice, isometry and graph computation sits on the
              SNF and the polynomial helpers here.

Zeroent Exact Arithmetic

PURPOSE:
    Integer matrices are sympy matrices with integer entries, rationals are
    fractions.Fraction and integer polynomials are sympy Poly objects over ZZ
    in the module symbol X. All functions are pure.

KEY EXPORTS:
    - smith_normal_form(m) -> (s, u, v) with u*m*v == s
    - char_poly(m), cyclotomic(n), coefficients(p)
    - isolate_real_roots_above_one(p, width), refine_root(p, interval, width)
    - sturm_root_count(p, a, b), is_reciprocal(p)
    - integer_kernel(m), minor_gcd_invariants(m)
"""

import logging
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Sequence

import sympy
from sympy import ImmutableMatrix, Matrix, Poly

_LOGGER = logging.getLogger(__name__)

X = sympy.Symbol("x")
DEFAULT_WIDTH = Fraction(1, 1 << 32)

Interval = tuple[Fraction, Fraction]


def int_matrix(rows: Iterable[Iterable[int]]) -> ImmutableMatrix:
    """build an immutable integer matrix, rejecting non-integral entries"""
    data = [list(row) for row in rows]
    for row in data:
        for entry in row:
            if to_fraction(entry).denominator != 1:
                raise ValueError(f"non-integral matrix entry {entry}")
    if not data:
        return ImmutableMatrix.zeros(0, 0)
    return ImmutableMatrix([[int(entry) for entry in row] for row in data])


def as_rows(m) -> list[list[int]]:
    return [[int(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def to_fraction(value) -> Fraction:
    """sympy Rational / int -> Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


# --- Smith normal form ------------------------------------------------------


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _swap_rows(a, i, j):
    a[i], a[j] = a[j], a[i]


def _swap_cols(a, i, j):
    for row in a:
        row[i], row[j] = row[j], row[i]


def _add_row(a, target, source, factor):
    if factor:
        a[target] = [t + factor * s for t, s in zip(a[target], a[source])]


def _add_col(a, target, source, factor):
    if factor:
        for row in a:
            row[target] += factor * row[source]


def _move_least_to_start(a, u, v, s) -> bool:
    """bring the smallest non-zero |entry| of the lower-right block to (s, s)"""
    best = None
    for i in range(s, len(a)):
        for j in range(s, len(a[0])):
            if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                best = (i, j)
    if best is None:
        return False
    if best[0] != s:
        _swap_rows(a, s, best[0])
        _swap_rows(u, s, best[0])
    if best[1] != s:
        _swap_cols(a, s, best[1])
        _swap_cols(v, s, best[1])
    return True


def _modify_edging(a, u, v, s) -> bool:
    """reduce row s and column s modulo the pivot, True when both are clean"""
    pivot = a[s][s]
    clean = True
    for i in range(s + 1, len(a)):
        q = a[i][s] // pivot
        _add_row(a, i, s, -q)
        _add_row(u, i, s, -q)
        clean = clean and a[i][s] == 0
    for j in range(s + 1, len(a[0])):
        q = a[s][j] // pivot
        _add_col(a, j, s, -q)
        _add_col(v, j, s, -q)
        clean = clean and a[s][j] == 0
    return clean


def _ensure_divisibility(a, u, s) -> bool:
    """fold a row whose entries the pivot does not divide into row s"""
    pivot = a[s][s]
    for i in range(s + 1, len(a)):
        if any(entry % pivot for entry in a[i][s + 1 :]):
            _add_row(a, s, i, 1)
            _add_row(u, s, i, 1)
            return False
    return True


def smith_normal_form(m) -> tuple[ImmutableMatrix, ImmutableMatrix, ImmutableMatrix]:
    """return (s, u, v) with u*m*v == s, s diagonal with d1 | d2 | ... then zeros"""
    rows, cols = m.shape
    a = as_rows(m)
    u = _identity(rows)
    v = _identity(cols)
    for s in range(min(rows, cols)):
        while True:
            if not _move_least_to_start(a, u, v, s):
                return _freeze(a, rows, cols), _freeze(u, rows, rows), _freeze(v, cols, cols)
            if not _modify_edging(a, u, v, s):
                continue
            if _ensure_divisibility(a, u, s):
                break
        if a[s][s] < 0:
            a[s] = [-entry for entry in a[s]]
            u[s] = [-entry for entry in u[s]]
    return _freeze(a, rows, cols), _freeze(u, rows, rows), _freeze(v, cols, cols)


def _freeze(a, rows, cols) -> ImmutableMatrix:
    if rows == 0 or cols == 0:
        return ImmutableMatrix.zeros(rows, cols)
    return ImmutableMatrix(a)


def invariant_factors(m) -> list[int]:
    """non-zero diagonal of the Smith form"""
    s, _, _ = smith_normal_form(m)
    return [int(s[i, i]) for i in range(min(s.shape)) if s[i, i] != 0]


def minor_gcd_invariants(m) -> list[int]:
    """invariant factors from gcds of k x k minors; slow, used as an oracle"""
    rows, cols = m.shape
    previous = 1
    factors: list[int] = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for row_idx in combinations(range(rows), k):
            for col_idx in combinations(range(cols), k):
                g = gcd(g, int(m.extract(list(row_idx), list(col_idx)).det()))
        if g == 0:
            break
        factors.append(g // previous)
        previous = g
    return factors


def integer_kernel(m) -> list[list[int]]:
    """integer vectors spanning the rational kernel of m (not saturated)"""
    basis = []
    for column in Matrix(m).nullspace():
        entries = [to_fraction(entry) for entry in column]
        scale = lcm(*(entry.denominator for entry in entries))
        vector = [int(entry * scale) for entry in entries]
        content = gcd(*vector)
        basis.append([entry // content for entry in vector])
    return basis


# --- polynomials ------------------------------------------------------------


def int_poly(coeffs_low_first: Sequence[int]) -> Poly:
    """IntPoly from a lowest-degree-first coefficient list"""
    return Poly(list(reversed([int(c) for c in coeffs_low_first])) or [0], X, domain="ZZ")


def coefficients(p: Poly) -> list[int]:
    """lowest-degree-first coefficients"""
    return [int(c) for c in reversed(p.all_coeffs())]


def char_poly(m) -> Poly:
    """det(xI - m) as a monic integer polynomial"""
    if m.rows != m.cols:
        raise ValueError(f"char_poly needs a square matrix, got {m.rows}x{m.cols}")
    if m.rows == 0:
        return Poly(1, X, domain="ZZ")
    return Poly(Matrix(m).charpoly(X).as_expr(), X, domain="ZZ")


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> Poly:
    """n-th cyclotomic polynomial by exact division of x^n - 1"""
    if n < 1:
        raise ValueError(f"cyclotomic index must be positive, got {n}")
    quotient = Poly(X**n - 1, X, domain="ZZ")
    for d in sympy.divisors(n)[:-1]:
        quotient = quotient.exquo(cyclotomic(d))
    return quotient


def is_reciprocal(p: Poly) -> bool:
    """palindromic up to sign"""
    c = coefficients(p)
    return c == c[::-1] or c == [-entry for entry in c[::-1]]


def _sign_changes(values: Iterable) -> int:
    signs = [value > 0 for value in values if value != 0]
    return sum(1 for left, right in zip(signs, signs[1:]) if left != right)


def _sym(value) -> sympy.Rational:
    value = to_fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def sturm_root_count(p: Poly, a, b) -> int:
    """distinct real roots in (a, b] from the Sturm sequence"""
    sequence = sympy.sturm(Poly(p.as_expr(), X, domain="QQ"))
    at_a = [q.eval(_sym(a)) for q in sequence]
    at_b = [q.eval(_sym(b)) for q in sequence]
    return _sign_changes(at_a) - _sign_changes(at_b)


def refine_root(p: Poly, interval: Interval, width: Fraction = DEFAULT_WIDTH) -> Interval:
    """narrow an isolating interval of a square-free p to the requested width"""
    lo, hi = interval
    if hi - lo <= width:
        return interval
    s, t = p.refine_root(_sym(lo), _sym(hi), eps=_sym(width))
    return to_fraction(s), to_fraction(t)


def _split_at_one(p: Poly, lo: Fraction, hi: Fraction) -> Interval | None:
    """refine an interval until it lies on one side of 1; None when below"""
    width = (hi - lo) / 2
    while lo < 1 < hi:
        lo, hi = refine_root(p, (lo, hi), width)
        width /= 2
    if hi <= 1:
        return None
    return lo, hi


def _multiplicity(factors, interval: Interval) -> int:
    """multiplicity of the one root of the square-free part inside interval"""
    lo, hi = interval
    for factor, multiplicity in factors:
        if lo == hi:
            if factor.eval(_sym(lo)) == 0:
                return multiplicity
        elif sturm_root_count(factor, lo, hi) == 1:
            return multiplicity
    raise ValueError(f"no square-free factor has a root in {interval}")


def isolate_real_roots_above_one(p: Poly, width: Fraction | None = None) -> list[tuple[Interval, int]]:
    """disjoint isolating intervals with multiplicities for the real roots > 1"""
    if p.is_zero:
        raise ValueError("root isolation of the zero polynomial")
    if p.degree() < 1:
        return []
    p = Poly(p.as_expr(), X, domain="ZZ")
    _, factors = p.sqf_list()
    # roots of the square-free part are distinct, so its intervals are disjoint
    q = p.sqf_part()
    if q.eval(1) == 0:
        q = q.exquo(Poly(X - 1, X, domain="ZZ"))
    found: list[tuple[Interval, int]] = []
    if q.degree() >= 1:
        for (s, t), _ in q.intervals():
            interval = _split_at_one(q, to_fraction(s), to_fraction(t))
            if interval is None:
                continue
            if width is not None:
                interval = refine_root(q, interval, width)
            found.append((interval, _multiplicity(factors, interval)))
    found.sort()
    _LOGGER.debug("isolated %d real roots above 1 of degree-%d polynomial", len(found), p.degree())
    return found


def largest_real_root(p: Poly, width: Fraction = DEFAULT_WIDTH) -> Interval | None:
    """isolating interval of the largest real root > 1"""
    roots = isolate_real_roots_above_one(p)
    if not roots:
        return None
    return refine_root(Poly(p.as_expr(), X, domain="ZZ").sqf_part(), roots[-1][0], width)


def fraction_to_float(value: Fraction) -> float:
    return value.numerator / value.denominator
