# File Chain (see DEVELOPER.md):
# Doc Version: v1.0.0
# Date Modified: 2026-10-19
#
# - Called by: Developers/CI via unittest discovery
# - Reads from: src/zeroent/weierstrass.py
# - Writes to: None
# - Calls into: zeroent.weierstrass, zeroent.finitefield
#
# Purpose: Discriminants, symmetries and case split of the characteristic-0 family;
#          the isotrivial automorphism search in characteristic 2.
# Blast Radius: Test-only; no runtime behavior changes.

import sys
import unittest
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from zeroent.finitefield import Q, Qi, get_field  # noqa: E402
from zeroent.models import FieldError, InfiniteAutBroken, InvalidRootsError  # noqa: E402
from zeroent.weierstrass import (  # noqa: E402
    BPFamily,
    Char2Audit,
    char2_isotrivial_auts,
    char2_isotrivial_auts_bruteforce,
    classify_bp_case,
    delta0,
    fiber_preserving_quotient,
    full_discriminant,
    full_discriminant_degrees,
    gaussian_roots,
    k3_cover_substitution,
    lambda_symmetries,
    verify_roots,
)

small = st.integers(min_value=-20, max_value=20)


def family(a, b, c, field="Q"):
    return BPFamily.parse(str(a), str(b), str(c), field)


def qi(*texts):
    return [Qi.parse(t) for t in texts]


def q(*values):
    return [Q.from_int(v) for v in values]


class TestDiscriminant(unittest.TestCase):
    @settings(max_examples=50, deadline=None)
    @given(small, small, small)
    def test_delta0_closed_form(self, a, b, c):
        d0 = delta0(family(a, b, c))
        expected = [a * a, 2 * a * b, 2 * a * c + b * b, 2 * b * c, c * c - 1]
        self.assertEqual(d0.coeffs, tuple(Q.from_int(x) for x in expected))

    def test_degrees(self):
        for args in ((1, 0, 0), (1, 0, 2), (1, 1, 0), (2, 3, 5)):
            with self.subTest(args=args):
                degrees = full_discriminant_degrees(family(*args))
                self.assertEqual(degrees, [8, 1, 1, 1, 1])
                self.assertEqual(sum(degrees), 12)
                self.assertEqual(full_discriminant(family(*args)).degree, 12)

    def test_out_of_range(self):
        with self.assertRaises(InfiniteAutBroken):
            family(0, 1, 0).check_range()
        for c in (1, -1):
            with self.subTest(c=c), self.assertRaises(InfiniteAutBroken):
                family(1, 0, c).check_range()

    def test_family_needs_characteristic_zero(self):
        with self.assertRaises(FieldError):
            family(1, 0, 0, "F4")

    def test_gaussian_coefficients(self):
        f = family("1", "i", "0", "Qi")
        self.assertEqual(full_discriminant_degrees(f), [8, 1, 1, 1, 1])


class TestSymmetries(unittest.TestCase):
    def test_lambda_orders(self):
        expected = {(1, 0, 0): 4, (1, 0, 2): 2, (1, 1, 0): 1, (3, 2, 5): 1}
        for args, order in expected.items():
            with self.subTest(args=args):
                found = lambda_symmetries(family(*args))
                self.assertEqual(found.order, order)
                self.assertTrue(found.consistent)

    def test_case_split(self):
        self.assertEqual(classify_bp_case(qi("1", "i", "-1", "-i")).case, "a")
        self.assertEqual(classify_bp_case(q(1, -1, 2, -2)).case, "b")
        self.assertEqual(classify_bp_case(q(1, 2, 3, 5)).case, "c")

    def test_case_split_normalizes(self):
        self.assertEqual(classify_bp_case(qi("2", "2*i", "-2", "-2*i")).case, "a")
        self.assertEqual(classify_bp_case(q(3, -3, 6, -6)).case, "b")

    def test_bad_roots(self):
        for roots in (q(1, 2, 3), q(1, 1, 2, 3), q(0, 1, 2, 3)):
            with self.subTest(roots=[str(r) for r in roots]), self.assertRaises(InvalidRootsError):
                classify_bp_case(roots)

    def test_gaussian_roots(self):
        roots = gaussian_roots(family(1, 0, 0))
        self.assertEqual(set(roots), set(qi("1", "-1", "i", "-i")))
        self.assertEqual(classify_bp_case(roots).case, "a")
        self.assertTrue(verify_roots(family(1, 0, 0), roots))

    def test_lambda_order_agrees_with_case(self):
        orders = {"a": 4, "b": 2, "c": 1}
        families = ((1, 0, 0), ("2/3", 0, "-5/3"), (4, -12, 9))
        # roots {1, -1, i, -i}; {1, -1, 2, -2}; {1, 2, (3 + i)/2, (3 - i)/2}
        for args in families:
            with self.subTest(args=args):
                f = family(*args)
                roots = gaussian_roots(f)
                self.assertIsNotNone(roots)
                self.assertTrue(verify_roots(f, roots))
                case = classify_bp_case(roots).case
                self.assertEqual(lambda_symmetries(f).order, orders[case])
        self.assertEqual(
            [classify_bp_case(gaussian_roots(family(*args))).case for args in families],
            ["a", "b", "c"],
        )

    def test_verify_roots(self):
        f = family(1, 0, 0)
        self.assertTrue(verify_roots(f, q(1, -1)))
        self.assertFalse(verify_roots(f, q(2)))

    def test_k3_cover(self):
        cover = k3_cover_substitution(family(1, 0, 2))
        self.assertEqual(cover.a2_squares.degree, 4)
        self.assertEqual(cover.x1.degree, 8)
        self.assertEqual(cover.x2.values(), ["2", "0", "0", "0", "4"])


class TestCharacteristicTwo(unittest.TestCase):
    def _run(self, name, a, b):
        field = get_field(name)
        return char2_isotrivial_auts(field.element(a), field.element(b))

    def _check(self, solutions):
        audit = Char2Audit(tuple(solutions))
        self.assertTrue(audit.b1_b2_vanish)
        self.assertTrue(audit.lambda_is_mu_inverse_squared)
        self.assertTrue(audit.beta_cubed_is_one)
        self.assertTrue(audit.mu_cubed_is_one)
        self.assertTrue(audit.b3_in_zero_or_st2)
        self.assertTrue(audit.identity_present)
        self.assertEqual(fiber_preserving_quotient(solutions), ["identity", "sign involution"])

    def test_f4(self):
        for (a, b), count in {(1, 0): 6, (1, 1): 6, (0, 1): 18, (2, 3): 6}.items():
            with self.subTest(a=a, b=b):
                solutions = self._run("F4", a, b)
                self.assertEqual(len(solutions), count)
                self._check(solutions)

    def test_f2_matches_plain_enumeration(self):
        f2 = get_field("F2")
        for a, b in ((1, 0), (1, 1), (0, 1)):
            with self.subTest(a=a, b=b):
                staged = char2_isotrivial_auts(f2.element(a), f2.element(b))
                plain = char2_isotrivial_auts_bruteforce(f2.element(a), f2.element(b))
                self.assertEqual([s.key for s in staged], [s.key for s in plain])
                self.assertEqual(len(staged), 2)

    def test_f4_plain_enumeration_passes_audit(self):
        f4 = get_field("F4")
        for a, b in ((1, 0), (0, 1), (2, 3)):
            with self.subTest(a=a, b=b):
                plain = char2_isotrivial_auts_bruteforce(f4.element(a), f4.element(b))
                self._check(plain)
                staged = char2_isotrivial_auts(f4.element(a), f4.element(b))
                self.assertEqual([s.key for s in plain], [s.key for s in staged])

    def test_degenerate_curve(self):
        f4 = get_field("F4")
        with self.assertRaises(InfiniteAutBroken):
            char2_isotrivial_auts(f4.zero(), f4.zero())

    def test_field_checks(self):
        f4 = get_field("F4")
        with self.assertRaises(FieldError):
            char2_isotrivial_auts(f4.one(), f4.zero(), "F16")
        with self.assertRaises(FieldError):
            char2_isotrivial_auts(Q.one(), Q.zero())
        f16 = get_field("F16")
        with self.assertRaises(FieldError):
            char2_isotrivial_auts_bruteforce(f16.one(), f16.zero())

    @pytest.mark.slow
    def test_f16(self):
        for (a, b), count in {(1, 0): 6, (0, 1): 18, (5, 9): 6}.items():
            with self.subTest(a=a, b=b):
                solutions = self._run("F16", a, b)
                self.assertEqual(len(solutions), count)
                self._check(solutions)


if __name__ == "__main__":
    unittest.main()
