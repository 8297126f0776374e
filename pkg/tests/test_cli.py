# File Chain (see DEVELOPER.md):
# Doc Version: v1.0.0
# Date Modified: 2026-10-19
#
# - Called by: Developers/CI via unittest discovery
# - Reads from: src/zeroent/main.py, src/zeroent/reports.py, src/zeroent/render.py
# - Writes to: Temporary test directories only
# - Calls into: zeroent.main (main, create_argparser), zeroent.render
#
# Purpose: Command dispatch, report output, exit codes and DOT export.
# Blast Radius: Test-only; no runtime behavior changes.

import io
import json
import sys
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path
from unittest.mock import patch

ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from zeroent.catalog import catalog_entry  # noqa: E402
from zeroent.dualgraph import find_fiber  # noqa: E402
from zeroent.main import create_argparser, main  # noqa: E402
from zeroent.models import ZeroentError  # noqa: E402
from zeroent.render import get_templates, load_template, render_dot  # noqa: E402


class CliCase(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)
        self.config = str(self.tmp / "config.toml")

    def tearDown(self):
        self._tmp.cleanup()

    def _run_main(self, argv):
        """run main() with a throwaway config; return (exit_code, stdout, stderr)"""
        stdout, stderr = io.StringIO(), io.StringIO()
        with patch.object(sys, "argv", ["zeroent", "-q", "-c", self.config, *argv]):
            with redirect_stdout(stdout), redirect_stderr(stderr):
                try:
                    code = main()
                except SystemExit as exc:
                    code = exc.code
        return code, stdout.getvalue(), stderr.getvalue()

    def _run_json(self, argv):
        code, out, _ = self._run_main([*argv, "--json"])
        return code, json.loads(out)


class TestDispatch(CliCase):
    def test_parser_keeps_command_arguments(self):
        args = create_argparser().parse_args(["-q", "graph", "--name", "A7~", "--scan"])
        self.assertEqual(args.command, "graph")
        self.assertEqual(args.arguments, ["--name", "A7~", "--scan"])

    def test_command_required(self):
        code, _, err = self._run_main([])
        self.assertEqual(code, 2)
        self.assertIn("a command is required", err)

    def test_unknown_command(self):
        code, _, _ = self._run_main(["nonsense"])
        self.assertEqual(code, 2)

    def test_write_config(self):
        code, _, _ = self._run_main(["-w"])
        self.assertEqual(code, 0)
        self.assertIn("root_width_exponent", Path(self.config).read_text(encoding="utf-8"))


class TestCommands(CliCase):
    def test_tables(self):
        code, report = self._run_json(["tables", "--table", "1"])
        self.assertEqual(code, 0)
        self.assertEqual(report["schema"], "zeroent-report-v1")
        self.assertTrue(report["passed"])
        self.assertEqual(len(report["results"]["rows"]), 18)

    def test_tables_bad_number(self):
        code, _, _ = self._run_main(["tables", "--table", "3"])
        self.assertEqual(code, 2)

    def test_summary_output(self):
        code, out, _ = self._run_main(["tables", "--table", "2"])
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith("tables: PASS (8/8 checks)"))
        self.assertIn("  [ok] row count", out)

    def test_entropy_fixtures(self):
        expected = {"identity-e10": "Elliptic", "transvection-e10": "Parabolic", "hyperbolic-e10": "Hyperbolic"}
        for fixture, kind in expected.items():
            with self.subTest(fixture=fixture):
                code, report = self._run_json(["entropy", "--fixture", fixture])
                self.assertEqual(code, 0)
                self.assertEqual(report["results"]["kind"], kind)
        _, report = self._run_json(["entropy", "--fixture", "hyperbolic-e10"])
        self.assertEqual(report["results"]["entropy"]["min_poly"], [1, -7, 1])

    def test_entropy_rejects_non_isometry(self):
        path = self.tmp / "bad.json"
        path.write_text(json.dumps({"gram": [[0, 1], [1, 0]], "matrix": [[2, 0], [0, 1]]}), encoding="utf-8")
        code, _, _ = self._run_main(["entropy", str(path)])
        self.assertEqual(code, 2)

    def test_entropy_missing_file(self):
        code, _, _ = self._run_main(["entropy", str(self.tmp / "absent.json")])
        self.assertEqual(code, 1)

    def test_mw(self):
        code, report = self._run_json(["mw", "--fibers", "I8,III"])
        self.assertEqual(code, 0)
        self.assertEqual(report["results"]["shioda_tate_rank"], 0)

    def test_mw_unknown_configuration_fails(self):
        code, _, _ = self._run_main(["mw", "--fibers", "I8"])
        self.assertEqual(code, 1)

    def test_height(self):
        code, report = self._run_json(["height", "--hit", "I8:2", "--expect", "1/2"])
        self.assertEqual(code, 0)
        self.assertEqual(report["results"]["height"], "1/2")
        code, _, _ = self._run_main(["height", "--hit", "I8:2", "--expect", "1"])
        self.assertEqual(code, 1)

    def test_overlattice(self):
        code, report = self._run_json(["overlattice", "--diag=-4,-8,-8"])
        self.assertEqual(code, 0)
        self.assertFalse(report["results"]["has_2elementary_overlattice"])

    def test_bp(self):
        code, report = self._run_json(["bp", "--a", "1", "--b", "0", "--c", "0"])
        self.assertEqual(code, 0)
        self.assertEqual(report["results"]["discriminant_degrees"], [8, 1, 1, 1, 1])
        self.assertEqual(report["results"]["lambda"]["n"], 4)
        self.assertEqual(report["results"]["case"]["case"], "a")

    def test_bp_out_of_range(self):
        code, _, _ = self._run_main(["bp", "--a", "0", "--b", "1", "--c", "0"])
        self.assertEqual(code, 1)

    def test_char2(self):
        code, report = self._run_json(["char2", "--field", "F2", "--a", "1", "--b", "0", "--bruteforce"])
        self.assertEqual(code, 0)
        self.assertEqual(report["results"]["count"], 2)
        self.assertEqual(report["results"]["quotient"], ["identity", "sign involution"])
        self.assertIn("not a proof", report["results"]["scope"])

    def test_graph_from_catalog(self):
        code, report = self._run_json(["graph", "--name", "A7~", "--scan"])
        self.assertEqual(code, 0)
        results = report["results"]
        self.assertTrue(results["span_is_E10"])
        self.assertEqual(results["scan"]["violations"], [])
        self.assertEqual(sorted(results["nonextremal"]["support"]), sorted(f"R{i}" for i in range(1, 9)))

    def test_graph_file_rejects_asymmetric_matrix(self):
        path = self.tmp / "asym.json"
        path.write_text(json.dumps({"vertices": ["a", "b"], "matrix": [[-2, 1], [0, -2]]}), encoding="utf-8")
        code, _, _ = self._run_main(["graph", "--file", str(path)])
        self.assertEqual(code, 1)

    def test_graph_dot_export(self):
        dot = self.tmp / "a7.dot"
        code, _, _ = self._run_main(["graph", "--name", "A7~", "--dot", str(dot)])
        self.assertEqual(code, 0)
        text = dot.read_text(encoding="utf-8")
        self.assertTrue(text.startswith('graph "A7~" {'))
        self.assertIn('"R1" -- "R2"', text)


class TestRender(unittest.TestCase):
    def test_templates_listed(self):
        self.assertIn("dualgraph.dot", get_templates())

    def test_unknown_template(self):
        with self.assertRaises(ZeroentError):
            load_template("missing")

    def test_fiber_is_marked(self):
        entry = catalog_entry("D6+A1~")
        fiber = find_fiber(entry.graph, entry.f0)
        text = render_dot(entry.graph, fiber)
        self.assertIn('"R9" -- "RXX" [label="2"];', text)
        self.assertIn('"R6" [style="dashed", xlabel="4"];', text)
        self.assertNotIn('"RX" [', text)
        self.assertNotIn("&#34;", text)


if __name__ == "__main__":
    unittest.main()
