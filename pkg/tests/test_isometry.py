# File Chain (see DEVELOPER.md):
# Doc Version: v1.0.0
# Date Modified: 2026-10-19
#
# - Called by: Developers/CI via unittest discovery
# - Reads from: src/zeroent/isometry.py, src/zeroent/data/fixtures/*.json
# - Writes to: None
# - Calls into: zeroent.isometry, zeroent.lattice
#
# Purpose: Isometry validation, elliptic/parabolic/hyperbolic classification and entropy.
# Blast Radius: Test-only; no runtime behavior changes.

import sys
import unittest
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from zeroent.exact import coefficients, int_matrix, invariant_factors  # noqa: E402
from zeroent.isometry import (  # noqa: E402
    FIXTURES,
    IsometryKind,
    LatticeIsometry,
    classify,
    coinvariant_lattice,
    eichler_transvection,
    entropy,
    invariant_lattice,
    isometry_from_json,
    load_fixture,
)
from zeroent.lattice import direct_sum, standard_lattice  # noqa: E402
from zeroent.models import (  # noqa: E402
    NotAnIsometryError,
    ReportInputError,
    SignatureError,
    TransvectionError,
)

GOLDEN = Fraction(6854101966249685, 10**15)


def unit(i, n=10):
    return [int(i == j) for j in range(n)]


def reflection(l, r):
    """x -> x + (x.r) r for a root r"""
    n = l.rank
    columns = [[u + l.dot(unit(i, n), r) * rj for u, rj in zip(unit(i, n), r)] for i in range(n)]
    return LatticeIsometry(l, [[columns[j][i] for j in range(n)] for i in range(n)])


class TestLatticeIsometry(unittest.TestCase):
    def setUp(self):
        self.e10 = standard_lattice("E10")

    def test_fixtures_load(self):
        for name in FIXTURES:
            with self.subTest(name=name):
                g = load_fixture(name)
                self.assertEqual(g.lattice.rank, 10)

    def test_unknown_fixture(self):
        with self.assertRaises(ReportInputError):
            load_fixture("no-such-fixture")

    def test_rejects_non_isometry(self):
        doubled = [[2 * x for x in row] for row in [unit(i) for i in range(10)]]
        with self.assertRaises(NotAnIsometryError):
            LatticeIsometry(self.e10, doubled)

    def test_rejects_wrong_shape(self):
        with self.assertRaises(NotAnIsometryError):
            LatticeIsometry(self.e10, [[1, 0], [0, 1]])

    def test_json_needs_matrix(self):
        with self.assertRaises(ReportInputError):
            isometry_from_json({"lattice": "E10"})

    def test_inverse_and_powers(self):
        g = load_fixture("transvection-e10")
        self.assertTrue((g.inverse() @ g).is_identity)
        self.assertTrue((g.power(-2) @ g.power(2)).is_identity)
        self.assertFalse(g.power(5).is_identity)

    def test_apply(self):
        g = load_fixture("transvection-e10")
        self.assertEqual(g.apply(unit(0)), tuple(unit(0)))


class TestTransvection(unittest.TestCase):
    def setUp(self):
        self.e10 = standard_lattice("E10")

    def test_matches_fixture(self):
        built = eichler_transvection(self.e10, unit(0), unit(2))
        self.assertEqual(built.matrix, load_fixture("transvection-e10").matrix)

    def test_non_isotropic_f(self):
        with self.assertRaises(TransvectionError):
            eichler_transvection(self.e10, unit(2), unit(3))

    def test_e_not_orthogonal(self):
        with self.assertRaises(TransvectionError):
            eichler_transvection(self.e10, unit(0), unit(1))

    def test_invariant_and_coinvariant_ranks(self):
        g = eichler_transvection(self.e10, unit(0), unit(2))
        self.assertEqual(invariant_lattice(g).rank, 8)
        self.assertEqual(coinvariant_lattice(g).rank, 2)

    def test_zero_e_gives_identity(self):
        self.assertTrue(eichler_transvection(self.e10, unit(0), [0] * 10).is_identity)

    def test_negated_e_inverts(self):
        forward = eichler_transvection(self.e10, unit(0), unit(2))
        backward = eichler_transvection(self.e10, unit(0), [-x for x in unit(2)])
        self.assertTrue((forward @ backward).is_identity)
        self.assertEqual(backward.matrix, forward.inverse().matrix)


class TestInvariantLattices(unittest.TestCase):
    def test_minus_identity_on_a1(self):
        a1 = standard_lattice("A1")
        g = LatticeIsometry(a1, [[-1]])
        self.assertEqual(invariant_lattice(g).rank, 0)
        self.assertEqual(coinvariant_lattice(g).gram.tolist(), [[-2]])

    def test_swapped_summands(self):
        a1 = standard_lattice("A1")
        g = LatticeIsometry(direct_sum(a1, a1), [[0, 1], [1, 0]])
        self.assertEqual(invariant_lattice(g).gram.tolist(), [[-4]])
        self.assertEqual(coinvariant_lattice(g).gram.tolist(), [[-4]])


class TestClassify(unittest.TestCase):
    def test_identity_is_elliptic(self):
        result = classify(load_fixture("identity-e10"))
        self.assertEqual(result.kind, IsometryKind.ELLIPTIC)
        self.assertEqual(result.order, 1)
        self.assertTrue(result.entropy.is_zero)

    def test_reflection_has_order_two(self):
        e10 = standard_lattice("E10")
        result = classify(reflection(e10, unit(2)))
        self.assertEqual(result.kind, IsometryKind.ELLIPTIC)
        self.assertEqual(result.order, 2)

    def test_transvection_is_parabolic(self):
        g = load_fixture("transvection-e10")
        result = classify(g)
        self.assertEqual(result.kind, IsometryKind.PARABOLIC)
        self.assertTrue(result.entropy.is_zero)
        self.assertEqual(result.fixed_isotropic, tuple(unit(0)))
        self.assertEqual(result.fixed_sign, 1)
        self.assertEqual(g.lattice.norm(result.fixed_isotropic), 0)
        self.assertEqual(invariant_factors(int_matrix([result.fixed_isotropic])), [1])

    def test_inverse_and_power_keep_parabolic_ray(self):
        g = load_fixture("transvection-e10")
        for other in (g.inverse(), g.power(3)):
            result = classify(other)
            self.assertEqual(result.kind, IsometryKind.PARABOLIC)
            self.assertEqual(result.fixed_isotropic, tuple(unit(0)))

    def test_product_of_transvections_is_hyperbolic(self):
        result = classify(load_fixture("hyperbolic-e10"))
        self.assertEqual(result.kind, IsometryKind.HYPERBOLIC)
        self.assertFalse(result.entropy.is_zero)
        self.assertEqual(coefficients(result.entropy.min_poly), [1, -7, 1])
        lo, hi = result.entropy.interval
        self.assertLessEqual(hi - lo, Fraction(1, 1 << 32))
        self.assertLess(lo, GOLDEN + Fraction(1, 10**12))
        self.assertGreater(hi, GOLDEN - Fraction(1, 10**12))
        self.assertAlmostEqual(result.entropy.spectral_radius, 6.854101966, places=8)

    def test_inverse_has_same_entropy(self):
        g = load_fixture("hyperbolic-e10")
        forward, backward = entropy(g), entropy(g.inverse())
        self.assertEqual(classify(g.inverse()).kind, IsometryKind.HYPERBOLIC)
        self.assertEqual(coefficients(backward.min_poly), coefficients(forward.min_poly))
        self.assertAlmostEqual(backward.approx, forward.approx, places=9)

    def test_square_squares_the_spectral_radius(self):
        g = load_fixture("hyperbolic-e10")
        squared = entropy(g.power(2))
        # lambda^2 + lambda^-2 = 7^2 - 2
        self.assertEqual(coefficients(squared.min_poly), [1, -47, 1])
        lo, hi = squared.interval
        self.assertTrue(lo * lo - 47 * lo + 1 <= 0 <= hi * hi - 47 * hi + 1)
        self.assertAlmostEqual(squared.approx, 2 * entropy(g).approx, places=9)

    def test_coarse_width(self):
        lo, hi = entropy(load_fixture("hyperbolic-e10"), Fraction(1, 1 << 8)).interval
        self.assertLessEqual(hi - lo, Fraction(1, 1 << 8))

    def test_definite_lattice_rejected(self):
        with self.assertRaises(SignatureError):
            classify(LatticeIsometry.identity(standard_lattice("E8")))


if __name__ == "__main__":
    unittest.main()
