# File Chain (see DEVELOPER.md):
# Doc Version: v1.0.0
# Date Modified: 2026-10-19
#
# - Called by: Developers/CI via unittest discovery
# - Reads from: src/zeroent/dualgraph.py, src/zeroent/data/graphs.yaml
# - Writes to: None
# - Calls into: zeroent.dualgraph, zeroent.catalog
#
# Purpose: Dual graph validation, affine fiber enumeration and fibration profiles.
# Blast Radius: Test-only; no runtime behavior changes.

import sys
import unittest
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from sympy import Matrix, Rational  # noqa: E402

from zeroent.catalog import DEFINING, builtin_catalog, catalog_entry  # noqa: E402
from zeroent.dualgraph import (  # noqa: E402
    DualGraph,
    GraphFiber,
    Halfness,
    affine_shape,
    contradiction_scan,
    enumerate_fibers,
    enumerate_fibers_bruteforce,
    fibration_profile,
    find_fiber,
    gram,
    rays,
    span_is_E10,
    unique_nonextremal,
)
from zeroent.exact import int_matrix, invariant_factors  # noqa: E402
from zeroent.lattice import even_overlattices, quotient_by_radical  # noqa: E402
from zeroent.models import InvalidGraphError  # noqa: E402


def cycle(n):
    labels = [f"C{i}" for i in range(n)]
    return DualGraph.from_edges(f"cycle{n}", labels, [(labels[i], labels[(i + 1) % n]) for i in range(n)])


def star(arms):
    """centre Z with paths of the given lengths"""
    vertices, edges = ["Z"], []
    for a, length in enumerate(arms):
        previous = "Z"
        for k in range(length):
            label = f"A{a}{k}"
            vertices.append(label)
            edges.append((previous, label))
            previous = label
    return DualGraph.from_edges("star", vertices, edges)


class TestValidation(unittest.TestCase):
    def test_duplicate_vertices(self):
        with self.assertRaises(InvalidGraphError):
            DualGraph.from_edges("g", ["a", "a"], [])

    def test_unknown_vertex(self):
        with self.assertRaises(InvalidGraphError):
            DualGraph.from_edges("g", ["a", "b"], [("a", "c")])

    def test_edge_twice_and_loop(self):
        with self.assertRaises(InvalidGraphError):
            DualGraph.from_edges("g", ["a", "b"], [("a", "b"), ("b", "a")])
        with self.assertRaises(InvalidGraphError):
            DualGraph.from_edges("g", ["a", "b"], [("a", "a")])

    def test_matrix_rules(self):
        bad = {
            "diagonal": [[-1, 0], [0, -2]],
            "asymmetric": [[-2, 1], [0, -2]],
            "negative": [[-2, -1], [-1, -2]],
            "shape": [[-2, 0]],
        }
        for reason, matrix in bad.items():
            with self.subTest(reason=reason), self.assertRaises(InvalidGraphError):
                DualGraph.from_json({"vertices": ["a", "b"], "matrix": matrix})

    def test_malformed_json(self):
        with self.assertRaises(InvalidGraphError):
            DualGraph.from_json({"edges": []})

    def test_json_forms_agree(self):
        by_edges = DualGraph.from_json({"name": "g", "vertices": ["a", "b"], "edges": [["a", "b", 2]]})
        by_matrix = DualGraph.from_json({"name": "g", "vertices": ["a", "b"], "matrix": [[-2, 2], [2, -2]]})
        self.assertEqual(by_edges, by_matrix)
        self.assertEqual(by_edges.edges, [("a", "b", 2)])


class TestAffineShape(unittest.TestCase):
    def test_cycle_is_type_a(self):
        g = cycle(4)
        name, marks, candidates = affine_shape(g, (0, 1, 2, 3))
        self.assertEqual(name, "A3~")
        self.assertEqual(set(marks.values()), {1})
        self.assertEqual(candidates, ("I4",))
        self.assertEqual(affine_shape(cycle(3), (0, 1, 2))[2], ("I3", "IV"))

    def test_double_edge(self):
        g = DualGraph.from_edges("g", ["a", "b"], [("a", "b", 2)])
        self.assertEqual(affine_shape(g, (0, 1)), ("A1~", {0: 1, 1: 1}, ("I2", "III")))

    def test_d4_star(self):
        g = star([1, 1, 1, 1])
        name, marks, candidates = affine_shape(g, tuple(range(5)))
        self.assertEqual(name, "D4~")
        self.assertEqual(marks[0], 2)
        self.assertEqual(candidates, ("I0*",))

    def test_e_stars(self):
        expected = {(2, 2, 2): ("E6~", 3), (1, 3, 3): ("E7~", 4), (1, 2, 5): ("E8~", 6)}
        for arms, (name, centre) in expected.items():
            g = star(list(arms))
            with self.subTest(arms=arms):
                shape = affine_shape(g, tuple(range(g.size)))
                self.assertEqual(shape[0], name)
                self.assertEqual(shape[1][0], centre)
                iso = [shape[1][v] for v in range(g.size)]
                self.assertEqual(g.pairing(iso, iso), 0)

    def test_finite_diagrams_are_not_affine(self):
        self.assertIsNone(affine_shape(star([1, 1, 1]), (0, 1, 2, 3)))
        self.assertIsNone(affine_shape(star([2, 2, 3]), tuple(range(8))))
        self.assertIsNone(affine_shape(cycle(5), (0, 1, 2)))


class TestEnumeration(unittest.TestCase):
    def test_connected_growth_matches_bruteforce(self):
        for name, entry in builtin_catalog().items():
            g = entry.graph
            if g.size > 12:
                continue
            with self.subTest(graph=name):
                grown = [f.support for f in enumerate_fibers(g)]
                brute = [f.support for f in enumerate_fibers_bruteforce(g)]
                self.assertEqual(grown, brute)

    def test_small_graphs(self):
        self.assertEqual([f.affine_type for f in enumerate_fibers(cycle(6))], ["A5~"])
        e7 = star([1, 3, 3])
        self.assertEqual([f.kodaira_label for f in enumerate_fibers(e7)], ["III*"])

    def test_find_fiber(self):
        g = catalog_entry("A7~").graph
        fiber = find_fiber(g, [f"R{i}" for i in range(1, 9)])
        self.assertIsInstance(fiber, GraphFiber)
        self.assertEqual(fiber.affine_type, "A7~")
        self.assertEqual(fiber.kodaira_candidates, ("I8",))
        with self.assertRaises(InvalidGraphError):
            find_fiber(g, ["R1", "R2"])


class TestFibrations(unittest.TestCase):
    def test_defining_graphs_span_e10(self):
        for name in DEFINING:
            with self.subTest(graph=name):
                self.assertTrue(span_is_E10(catalog_entry(name).graph))

    def test_unique_nonextremal_is_declared_f0(self):
        for name in DEFINING:
            entry = catalog_entry(name)
            with self.subTest(graph=name):
                fiber = unique_nonextremal(entry.graph)
                self.assertIsInstance(fiber, GraphFiber)
                self.assertEqual(set(fiber.support), set(entry.f0))
                profile = fibration_profile(entry.graph, fiber)
                self.assertFalse(profile.extremal_compatible)
                self.assertLess(profile.orthogonal_root_rank, 8)

    def test_rays_partition_fibers(self):
        g = catalog_entry("E6~").graph
        grouped = rays(g)
        self.assertEqual(sum(len(members) for members in grouped.values()), len(enumerate_fibers(g)))

    def test_small_graph_does_not_span(self):
        g = cycle(4)
        self.assertFalse(span_is_E10(g))
        with self.assertRaises(InvalidGraphError):
            unique_nonextremal(g)

    def test_defining_graphs_scan_clean(self):
        for name in DEFINING:
            entry = catalog_entry(name)
            with self.subTest(graph=name):
                f0 = find_fiber(entry.graph, entry.f0)
                self.assertEqual(contradiction_scan(entry.graph, f0, entry.rule), [])

    def test_unknown_rule(self):
        g = catalog_entry("A7~").graph
        f0 = find_fiber(g, catalog_entry("A7~").f0)
        with self.assertRaises(InvalidGraphError):
            contradiction_scan(g, f0, "no_such_rule")


class TestHalfness(unittest.TestCase):
    def test_cycle_met_once_is_half(self):
        g = catalog_entry("A7~").graph
        fiber = find_fiber(g, [f"R{i}" for i in range(1, 9)])
        e1 = [int(label == "E1") for label in g.vertices]
        self.assertEqual(g.pairing(fiber.iso_class, e1), 1)
        self.assertIs(fiber.halfness, Halfness.HALF)

    def test_lonely_cycle_is_simple_candidate(self):
        # the cycle class is the radical, so its half projects to zero
        (fiber,) = enumerate_fibers(cycle(4))
        self.assertIs(fiber.halfness, Halfness.SIMPLE_CANDIDATE)

    def test_pendant_vertex_makes_cycle_half(self):
        labels = ["C0", "C1", "C2", "C3", "P"]
        edges = [("C0", "C1"), ("C1", "C2"), ("C2", "C3"), ("C3", "C0"), ("C0", "P")]
        g = DualGraph.from_edges("cycle4-pendant", labels, edges)
        fiber = find_fiber(g, labels[:4])
        self.assertIs(fiber.halfness, Halfness.HALF)

    def test_all_even_fiber_is_never_half(self):
        g = catalog_entry("i4s-i8-bridged").graph
        f0 = find_fiber(g, catalog_entry("i4s-i8-bridged").f0)
        outside = [v for v in g.vertices if v not in f0.support]
        for label in outside:
            vertex = [int(x == label) for x in g.vertices]
            self.assertEqual(g.pairing(f0.iso_class, vertex) % 2, 0)
        self.assertIn(f0.halfness, (Halfness.SIMPLE_CANDIDATE, Halfness.AMBIGUOUS))

    def test_half_fibers_are_primitive_in_the_saturation(self):
        for name in DEFINING:
            g = catalog_entry(name).graph
            quotient = quotient_by_radical(gram(g))
            saturations = [over for over in even_overlattices(quotient.lattice) if over.lattice.is_unimodular]
            self.assertTrue(saturations)
            for fiber in enumerate_fibers(g):
                if fiber.halfness is not Halfness.HALF:
                    continue
                image = Matrix([quotient.project(fiber.iso_class)])
                for over in saturations:
                    basis = Matrix([[Rational(x.numerator, x.denominator) for x in row] for row in over.basis])
                    coords = image * basis.inv()
                    with self.subTest(graph=name, fiber=fiber.support):
                        self.assertTrue(all(c.is_integer for c in coords))
                        row = int_matrix([[int(c) for c in coords]])
                        self.assertEqual(invariant_factors(row), [1])


if __name__ == "__main__":
    unittest.main()
