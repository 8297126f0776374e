# File Chain (see DEVELOPER.md):
# Doc Version: v1.0.0
# Date Modified: 2026-10-19
#
# - Called by: Developers/CI via unittest discovery
# - Reads from: src/zeroent/finitefield.py
# - Writes to: None
# - Calls into: zeroent.finitefield
#
# Purpose: Field arithmetic over Q, Q(i) and GF(2^k).
# Blast Radius: Test-only; no runtime behavior changes.

import sys
import unittest
from fractions import Fraction
from pathlib import Path

from hypothesis import given
from hypothesis import strategies as st

ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from zeroent.finitefield import FIELD_NAMES, Q, Qi, get_field, to_gaussian  # noqa: E402
from zeroent.models import FieldError  # noqa: E402

F4 = get_field("F4")
F16 = get_field("F16")
f16_elements = st.integers(min_value=0, max_value=15).map(F16.element)


class TestBinaryField(unittest.TestCase):
    def test_f4_generator(self):
        w = F4.element(0b10)
        self.assertEqual(w * w, w + 1)
        self.assertEqual(w**3, 1)
        self.assertEqual(w**2 + w + 1, 0)

    def test_f16_generator_is_primitive(self):
        z = F16.element(2)
        orders = [k for k in range(1, 16) if z**k == 1]
        self.assertEqual(orders, [15])

    def test_inverses(self):
        for field in (F4, F16, get_field("F256")):
            for x in field.units():
                with self.subTest(field=field.name, x=x):
                    self.assertEqual(field.mul(x, field.inv(x)), 1)

    def test_square_roots(self):
        for x in range(F16.order):
            self.assertEqual(F16.sqrt(F16.mul(x, x)), x)

    def test_characteristic_two(self):
        one = F16.one()
        self.assertEqual(one + one, 0)
        self.assertEqual(-F16.element(7), F16.element(7))
        self.assertEqual(F16.from_int(3), one)

    def test_division_by_zero(self):
        with self.assertRaises(FieldError):
            F16.zero().inverse()

    def test_out_of_range_element(self):
        with self.assertRaises(FieldError):
            F4.element(4)
        with self.assertRaises(FieldError):
            F4.parse("w")

    @given(f16_elements, f16_elements, f16_elements)
    def test_distributive(self, x, y, z):
        self.assertEqual(x * (y + z), x * y + x * z)
        self.assertEqual((x * y) * z, x * (y * z))


class TestCharacteristicZero(unittest.TestCase):
    def test_rationals(self):
        x = Q.parse("3/4")
        self.assertEqual(x.value, Fraction(3, 4))
        self.assertEqual(x * 4, 3)
        self.assertEqual((x / Q.parse("1/2")).value, Fraction(3, 2))
        with self.assertRaises(FieldError):
            Q.parse("three")

    def test_gaussian(self):
        x = Qi.parse("1+2i")
        y = Qi.parse("1-2i")
        self.assertEqual(x * y, 5)
        self.assertEqual(Qi.i**4, 1)
        self.assertEqual(Qi.i * Qi.i, -1)
        self.assertEqual(x * x.inverse(), 1)

    def test_embedding(self):
        self.assertEqual(to_gaussian(Q.parse("1/2")) * 2, Qi.one())
        with self.assertRaises(FieldError):
            to_gaussian(F4.one())

    def test_mixing_fields(self):
        with self.assertRaises(FieldError):
            Q.one() + Qi.one()
        with self.assertRaises(FieldError):
            F4.one() * F16.one()


class TestRegistry(unittest.TestCase):
    def test_names(self):
        for name in FIELD_NAMES:
            self.assertEqual(get_field(name).name, name)
        with self.assertRaises(FieldError):
            get_field("F8")


if __name__ == "__main__":
    unittest.main()
