"""
File Chain (see DEVELOPER.md):
Doc Version: v1.0.0
Date Modified: 2026-10-19

- Called by: main.py (subcommand dispatch), tests/test_cli.py
- Reads from: isometry/graph JSON files given on the command line, bundled data
- Writes to: stdout (report), DOT file (graph --dot)
- Calls into: isometry.py, fibration.py, lattice.py, dualgraph.py, catalog.py,
              weierstrass.py, render.py, enlighten

Purpose: One report builder per subcommand. Every report carries the echoed
         arguments, structured results and named checks; the exit code is 0
         only when every check passes.

Blast Radius: MEDIUM - the machine-readable output other tooling consumes.
              Report keys are part of the "zeroent-report-v1" schema.

Zeroent Reports

PURPOSE:
    Each command has a parser builder (build_<name>_parser) and a runner
    (run_<name>(args, cfg, progress) -> Report). main() parses the command's
    own arguments, runs it and prints the report as JSON (--json) or as a
    short summary.

KEY EXPORTS:
    - Report, SCHEMA, COMMANDS
    - main(command, argv, cfg, progress) -> int
"""

import argparse
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Any, Callable, Sequence

import enlighten

from zeroent.catalog import catalog_entry, classify_catalog, classify_entry
from zeroent.config import Config
from zeroent.dualgraph import (
    DualGraph,
    GraphFiber,
    NotUnique,
    contradiction_scan,
    enumerate_fibers,
    enumerate_fibers_bruteforce,
    fibration_profile,
    find_fiber,
    span_is_E10,
    unique_nonextremal,
)
from zeroent.exact import coefficients, cyclotomic
from zeroent.fibration import (
    ALLOWED_RULES,
    FiberConfiguration,
    allowed_by_rule,
    audit_table,
    height,
    is_extremal,
    mw_lookup,
    shioda_tate_rank,
    torsion_disc_consistency,
)
from zeroent.finitefield import FieldElem, Qi, get_field
from zeroent.isometry import FIXTURES, IsometryKind, LatticeIsometry, classify, isometry_from_json, load_fixture
from zeroent.lattice import (
    diagonal_lattice,
    discriminant_group,
    even_overlattices,
    has_2elementary_overlattice,
    has_2elementary_overlattice_bruteforce,
    is_p_elementary,
)
from zeroent.models import Check, NotAnIsometryError, NotExtremalOrUnknown, ReportInputError
from zeroent.render import render_dot
from zeroent.weierstrass import (
    SEARCH_FIELDS,
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

_LOGGER = logging.getLogger(__name__)

SCHEMA = "zeroent-report-v1"
TABLE_ROWS = {1: 18, 2: 7}
BRUTEFORCE_VERTEX_LIMIT = 12
SWEEP_FIELDS = ("F4", "F16")
SWEEP_PAIRS = (("1", "0"), ("0", "1"), ("1", "1"))


@dataclass
class Report:
    command: str
    args: dict[str, Any]
    results: Any = None
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "args": self.args,
            "results": self.results,
            "checks": [check.to_dict() for check in self.checks],
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def summary(self) -> str:
        lines = [f"{self.command}: {'PASS' if self.passed else 'FAIL'} ({sum(c.passed for c in self.checks)}/{len(self.checks)} checks)"]
        for check in self.checks:
            mark = "ok" if check.passed else "FAIL"
            detail = "" if check.detail is None or check.passed else f": {check.detail}"
            lines.append(f"  [{mark}] {check.name}{detail}")
        return "\n".join(lines)


def _echo(args: argparse.Namespace) -> dict[str, Any]:
    return {key: str(value) if isinstance(value, Path) else value for key, value in sorted(vars(args).items())}


def _read_json(path: Path) -> Any:
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ReportInputError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ReportInputError(f"{path} is not valid JSON: {exc}") from exc


def _csv(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _parser(name: str, description: str) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=f"zeroent {name}", description=description)
    parser.add_argument("--json", action="store_true", help="print the report as JSON")
    return parser


# --- entropy -------------------------------------------------------------------


def build_entropy_parser() -> argparse.ArgumentParser:
    parser = _parser("entropy", "Classify a lattice isometry and compute its entropy")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("file", nargs="?", type=Path, help="isometry JSON with gram (or lattice) and matrix")
    source.add_argument("--fixture", choices=FIXTURES, help="use a bundled isometry")
    return parser


def _no_small_power_is_identity(g: LatticeIsometry, bound: int) -> bool:
    power = g
    for _ in range(bound):
        if power.is_identity:
            return False
        power = power @ g
    return True


def _entropy_checks(g: LatticeIsometry, result, bound: int) -> list[Check]:
    if result.kind is IsometryKind.ELLIPTIC:
        return [Check("g^order is the identity", g.power(result.order).is_identity)]
    if result.kind is IsometryKind.PARABOLIC:
        ray = result.fixed_isotropic
        image = g.apply(ray)
        return [
            Check(f"g^k is not the identity for k <= {bound}", _no_small_power_is_identity(g, bound)),
            Check("fixed ray is isotropic", g.lattice.norm(ray) == 0, list(ray)),
            Check("fixed ray is primitive", gcd(*ray) == 1),
            Check("g maps the ray to itself", image == tuple(result.fixed_sign * x for x in ray), result.fixed_sign),
        ]
    min_poly = result.entropy.min_poly
    lo, hi = result.entropy.interval
    not_cyclotomic = all(min_poly != cyclotomic(n) for n in range(1, 2 * min_poly.degree() ** 2 + 3))
    return [
        Check("minimal polynomial is not cyclotomic", not_cyclotomic, coefficients(min_poly)),
        Check("spectral radius isolated above 1", lo >= 1 and hi > lo, [str(lo), str(hi)]),
    ]


def run_entropy(args: argparse.Namespace, cfg: Config, progress: bool = False) -> Report:
    g = load_fixture(args.fixture) if args.fixture else isometry_from_json(_read_json(args.file))
    width = Fraction(1, 1 << cfg.root_width_exponent)
    result = classify(g, width)
    checks = _entropy_checks(g, result, cfg.transvection_power_bound)
    if result.kind is IsometryKind.HYPERBOLIC:
        lo, hi = result.entropy.interval
        checks.append(Check(f"interval width at most 2^-{cfg.root_width_exponent}", hi - lo <= width, str(hi - lo)))
    return Report("entropy", _echo(args), {"lattice": str(g.lattice), "rank": g.lattice.rank, **result.to_dict()}, checks)


# --- tables --------------------------------------------------------------------


def build_tables_parser() -> argparse.ArgumentParser:
    parser = _parser("tables", "Audit the extremal elliptic (1) or quasi-elliptic (2) table")
    parser.add_argument("--table", type=int, choices=sorted(TABLE_ROWS), required=True)
    return parser


def run_tables(args: argparse.Namespace, cfg: Config, progress: bool = False) -> Report:
    audits = audit_table(args.table)
    expected = TABLE_ROWS[args.table]
    checks = [Check("row count", len(audits) == expected, {"rows": len(audits), "expected": expected})]
    checks += [Check(f"row {i}: {audit.row.label}", audit.passed) for i, audit in enumerate(audits, 1)]
    results = {"rows": [audit.to_dict() for audit in audits], "passed_rows": sum(a.passed for a in audits)}
    return Report("tables", _echo(args), results, checks)


# --- mw ------------------------------------------------------------------------


def build_mw_parser() -> argparse.ArgumentParser:
    parser = _parser("mw", "Mordell-Weil group and fiber actions of an extremal configuration")
    parser.add_argument("--fibers", required=True, help="comma separated Kodaira types, e.g. I8,III or 4xIII")
    parser.add_argument("--quasi-elliptic", action="store_true", help="look up the characteristic-2 table")
    return parser


def run_mw(args: argparse.Namespace, cfg: Config, progress: bool = False) -> Report:
    config = FiberConfiguration.parse(args.fibers)
    results: dict[str, Any] = {
        "configuration": str(config),
        "root_type": str(config.root_type),
        "extremal": is_extremal(config, args.quasi_elliptic),
        "allowed": {rule: allowed_by_rule(config, rule) for rule in ALLOWED_RULES},
    }
    if not args.quasi_elliptic:
        results["shioda_tate_rank"] = shioda_tate_rank(config)
    try:
        lookup = mw_lookup(config, args.quasi_elliptic)
    except NotExtremalOrUnknown as exc:
        results["mw"] = None
        return Report("mw", _echo(args), results, [Check("configuration found in table", False, str(exc))])
    results["mw"] = lookup.to_dict()
    checks = [
        Check("configuration found in table", True),
        Check("torsion squared equals det", torsion_disc_consistency(config, args.quasi_elliptic)),
    ]
    return Report("mw", _echo(args), results, checks)


# --- graph ---------------------------------------------------------------------


def build_graph_parser() -> argparse.ArgumentParser:
    parser = _parser("graph", "Fibers, the non-extremal fibration and the contradiction scan of a dual graph")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--name", help="catalog id, e.g. A7~")
    source.add_argument("--file", type=Path, help="graph JSON (vertices and edges, or matrix)")
    parser.add_argument("--scan", action="store_true", help="run the contradiction scan")
    parser.add_argument("--rule", choices=ALLOWED_RULES, help="allowed-fiber list for the scan")
    parser.add_argument("--f0", help="comma separated support of the starting fiber")
    parser.add_argument("--dot", type=Path, help="write the graph as DOT to this file")
    return parser


def _fiber_result(value: GraphFiber | NotUnique | None) -> Any:
    if isinstance(value, GraphFiber):
        return value.to_dict()
    if isinstance(value, NotUnique):
        return {"not_unique": [f.to_dict() for f in value.candidates]}
    return None


def run_graph(args: argparse.Namespace, cfg: Config, progress: bool = False) -> Report:
    entry = catalog_entry(args.name) if args.name else None
    g = entry.graph if entry else DualGraph.from_json(_read_json(args.file), name=args.file.stem)
    rule = args.rule or (entry.rule if entry else cfg.scan_rule)

    fibers = enumerate_fibers(g)
    spans = span_is_E10(g)
    nonextremal = unique_nonextremal(g) if spans else None
    results: dict[str, Any] = {
        "graph": g.to_json(),
        "meta": dict(g.meta),
        "span_is_E10": spans,
        "fibers": [f.to_dict() for f in fibers],
        "nonextremal": _fiber_result(nonextremal),
    }
    if isinstance(nonextremal, GraphFiber):
        results["profile"] = fibration_profile(g, nonextremal).to_dict()

    checks = []
    if g.size <= BRUTEFORCE_VERTEX_LIMIT:
        brute = {f.support for f in enumerate_fibers_bruteforce(g)}
        checks.append(Check("fiber enumeration matches exhaustive search", {f.support for f in fibers} == brute))

    f0 = None
    if args.f0:
        f0 = find_fiber(g, _csv(args.f0))
    elif isinstance(nonextremal, GraphFiber):
        f0 = nonextremal
    elif entry:
        f0 = find_fiber(g, entry.f0)

    if args.scan:
        if f0 is None:
            raise ReportInputError("the scan needs --f0 when the graph has no unique non-extremal fibration")
        if entry and not args.f0 and rule == entry.rule:
            replay = classify_entry(entry)
            violations = replay.violations
            checks.append(replay.expectation)
        else:
            violations = contradiction_scan(g, f0, rule)
        results["scan"] = {"f0": list(f0.support), "rule": rule, "violations": [v.to_dict() for v in violations]}

    if args.dot:
        args.dot.write_text(render_dot(g, f0), encoding="utf-8")
        _LOGGER.info("DOT written to %s", args.dot)
    return Report("graph", _echo(args), results, checks)


# --- classify-all --------------------------------------------------------------


def build_classify_all_parser() -> argparse.ArgumentParser:
    return _parser("classify-all", "Replay the dual-graph catalog; exactly the defining graphs must survive")


def run_classify_all(args: argparse.Namespace, cfg: Config, progress: bool = False) -> Report:
    report = classify_catalog(threads=cfg.effective_threads(), progress=progress)
    results = {"survivors": report.survivors, "graphs": [r.to_dict() for r in report.results]}
    return Report("classify-all", _echo(args), results, list(report.checks))


# --- bp ------------------------------------------------------------------------


def build_bp_parser() -> argparse.ArgumentParser:
    parser = _parser("bp", "Analyse y^2 = x^3 + 2 a2(s,t) x^2 + t^4 x with a2 = a s^2 + b s t + c t^2")
    parser.add_argument("--a", required=True)
    parser.add_argument("--b", required=True)
    parser.add_argument("--c", required=True)
    parser.add_argument("--field", choices=("Q", "Qi"), default="Q")
    parser.add_argument("--roots", help="comma separated roots of delta0(s, 1) when they are not in Q(i)")
    return parser


def run_bp(args: argparse.Namespace, cfg: Config, progress: bool = False) -> Report:
    f = BPFamily.parse(args.a, args.b, args.c, args.field)
    f.check_range()
    d0 = delta0(f)
    expected = (f.a * f.a, 2 * f.a * f.b, 2 * f.a * f.c + f.b * f.b, 2 * f.b * f.c, f.c * f.c - 1)
    degrees = full_discriminant_degrees(f)
    symmetries = lambda_symmetries(f)
    results: dict[str, Any] = {
        "family": f.to_dict(),
        "delta0": d0.values(),
        "full_discriminant": full_discriminant(f).values(),
        "discriminant_degrees": degrees,
        "lambda": symmetries.to_dict(),
        "k3_cover": k3_cover_substitution(f).to_dict(),
    }
    checks = [
        Check("delta0 matches [a^2, 2ab, 2ac+b^2, 2bc, c^2-1]", tuple(d0.coeffs) == expected),
        Check("delta0 has four distinct roots", d0.is_squarefree()),
        Check("discriminant degrees total 12", sum(degrees) == 12, degrees),
        Check("discriminant splits as 8,1,1,1,1", degrees == [8, 1, 1, 1, 1], degrees),
        Check("lambda symmetries match b and c", symmetries.consistent, symmetries.to_dict()),
    ]

    roots: list[FieldElem] | None
    if args.roots:
        roots = [Qi.parse(text) for text in _csv(args.roots)]
        checks.append(Check("supplied roots annihilate delta0", verify_roots(f, roots)))
    else:
        roots = gaussian_roots(f)
    if roots is None:
        results["roots"] = None
        results["case"] = None
    else:
        results["roots"] = [str(r) for r in roots]
        results["case"] = classify_bp_case(roots).to_dict()
    return Report("bp", _echo(args), results, checks)


# --- char2 ---------------------------------------------------------------------

CHAR2_SCOPE = "exhaustive over the chosen finite field; not a proof over every algebraically closed field"


def build_char2_parser() -> argparse.ArgumentParser:
    parser = _parser("char2", "Isotrivial automorphisms of y^2 + s t^2 y = x^3 + a t^2 x^2 + b t^6")
    parser.add_argument("--a", default="1", help="element of the field, e.g. 1 or 0x2")
    parser.add_argument("--b", default="0")
    parser.add_argument("--field", choices=SEARCH_FIELDS, help="search field, defaults to the configured one")
    parser.add_argument("--bruteforce", action="store_true", help="cross-check against the naive search (F2, F4)")
    parser.add_argument("--sweep", action="store_true", help="audit every standard (a, b) over F4 and F16")
    return parser


def _audit_checks(prefix: str, solutions) -> list[Check]:
    audit = Char2Audit(tuple(solutions))
    quotient = fiber_preserving_quotient(solutions)
    return [
        Check(f"{prefix}b1 = b2 = 0", audit.b1_b2_vanish),
        Check(f"{prefix}lambda = mu^-2", audit.lambda_is_mu_inverse_squared),
        Check(f"{prefix}beta^3 = 1", audit.beta_cubed_is_one),
        Check(f"{prefix}mu^3 = 1", audit.mu_cubed_is_one),
        Check(f"{prefix}b3 in {{0, s t^2}}", audit.b3_in_zero_or_st2),
        Check(f"{prefix}identity present", audit.identity_present),
        Check(f"{prefix}quotient is identity and sign involution", quotient == ["identity", "sign involution"], quotient),
    ]


def _sweep_cases() -> list[tuple[str, str, str]]:
    cases = [(name, a, b) for name in SWEEP_FIELDS for a, b in SWEEP_PAIRS]
    f4 = get_field("F4")
    for a in range(1, f4.order):
        for b in range(1, f4.order):
            if (str(a), str(b)) != ("1", "1"):
                cases.append(("F4", str(a), str(b)))
    return cases


def run_char2(args: argparse.Namespace, cfg: Config, progress: bool = False) -> Report:
    if args.sweep:
        cases = _sweep_cases()
        counter = manager = None
        if progress:
            manager = enlighten.get_manager()
            counter = manager.counter(total=len(cases), desc="char2", unit="cases", leave=False, color="cyan")
        rows, checks = [], []
        try:
            for name, a, b in cases:
                field_ = get_field(name)
                solutions = char2_isotrivial_auts(field_.parse(a), field_.parse(b), field_)
                rows.append({"field": name, "a": a, "b": b, "solutions": len(solutions)})
                checks += _audit_checks(f"{name} a={a} b={b}: ", solutions)
                if counter is not None:
                    counter.update()
        finally:
            if counter is not None:
                counter.close()
            if manager is not None:
                manager.stop()
        return Report("char2", _echo(args), {"cases": rows, "scope": CHAR2_SCOPE}, checks)

    field_ = get_field(args.field or cfg.char2_field)
    a, b = field_.parse(args.a), field_.parse(args.b)
    solutions = char2_isotrivial_auts(a, b, field_)
    results = {
        "field": field_.name,
        "solutions": [s.to_dict() for s in solutions],
        "count": len(solutions),
        "quotient": fiber_preserving_quotient(solutions),
        "scope": CHAR2_SCOPE,
    }
    checks = _audit_checks("", solutions)
    if args.bruteforce:
        brute = char2_isotrivial_auts_bruteforce(a, b)
        same = {s.key for s in brute} == {s.key for s in solutions}
        checks.append(Check("staged search matches naive search", same, {"naive": len(brute)}))
    return Report("char2", _echo(args), results, checks)


# --- overlattice ---------------------------------------------------------------


def build_overlattice_parser() -> argparse.ArgumentParser:
    parser = _parser("overlattice", "Even overlattices of a diagonal lattice and the 2-elementary question")
    parser.add_argument("--diag", required=True, help="comma separated diagonal, e.g. --diag=-4,-8,-8")
    return parser


def run_overlattice(args: argparse.Namespace, cfg: Config, progress: bool = False) -> Report:
    try:
        values = [int(v) for v in _csv(args.diag)]
    except ValueError as exc:
        raise ReportInputError(f"--diag needs integers: {args.diag!r}") from exc
    l = diagonal_lattice(values, "+".join(f"({v})" for v in values))
    disc = discriminant_group(l)
    overs = even_overlattices(l, cfg.overlattice_order_cap)
    found = has_2elementary_overlattice(l, cfg.overlattice_order_cap)
    brute = has_2elementary_overlattice_bruteforce(l, cfg.overlattice_order_cap)
    results = {
        "lattice": str(l),
        "det": l.det,
        "discriminant": {"invariant_factors": list(disc.invariant_factors), "order": disc.order},
        "overlattices": [
            {"index": o.index, "det": o.lattice.det, "two_elementary": is_p_elementary(o.lattice, 2)} for o in overs
        ],
        "has_2elementary_overlattice": found,
    }
    checks = [
        Check("enumeration agrees with the subgroup scan", found == brute, {"scan": brute}),
        Check("index^2 * det M = det L", all(o.index**2 * o.lattice.det == l.det for o in overs)),
    ]
    return Report("overlattice", _echo(args), results, checks)


# --- height --------------------------------------------------------------------


def build_height_parser() -> argparse.ArgumentParser:
    parser = _parser("height", "Height of a section from the fiber components it meets")
    parser.add_argument("--chi", type=int, default=1, help="Euler characteristic of the structure sheaf")
    parser.add_argument("--pdoto", type=int, default=0, help="intersection of the section with the zero section")
    parser.add_argument("--hit", action="append", default=[], help="TYPE:COMPONENT, e.g. I8:2 (repeatable)")
    parser.add_argument("--expect", help="expected height as a fraction, e.g. 1/2")
    return parser


def _hits(tokens: Sequence[str]) -> list[tuple[str, int]]:
    hits = []
    for token in tokens:
        label, sep, component = token.rpartition(":")
        if not sep or not component.isdigit():
            raise ReportInputError(f"--hit needs TYPE:COMPONENT, got {token!r}")
        hits.append((label, int(component)))
    return hits


def run_height(args: argparse.Namespace, cfg: Config, progress: bool = False) -> Report:
    value = height(args.chi, args.pdoto, _hits(args.hit))
    results = {"height": str(value), "height_display": float(value)}
    checks = [Check("height is non-negative", value >= 0, str(value))]
    if args.expect:
        try:
            wanted = Fraction(args.expect)
        except ValueError as exc:
            raise ReportInputError(f"--expect needs a fraction, got {args.expect!r}") from exc
        checks.append(Check(f"height equals {wanted}", value == wanted, str(value)))
    return Report("height", _echo(args), results, checks)


Runner = Callable[[argparse.Namespace, Config, bool], Report]

COMMANDS: dict[str, tuple[Callable[[], argparse.ArgumentParser], Runner]] = {
    "entropy": (build_entropy_parser, run_entropy),
    "tables": (build_tables_parser, run_tables),
    "mw": (build_mw_parser, run_mw),
    "graph": (build_graph_parser, run_graph),
    "classify-all": (build_classify_all_parser, run_classify_all),
    "bp": (build_bp_parser, run_bp),
    "char2": (build_char2_parser, run_char2),
    "overlattice": (build_overlattice_parser, run_overlattice),
    "height": (build_height_parser, run_height),
}


def main(command: str, argv: list[str] | None, cfg: Config, progress: bool = False) -> int:
    """run one subcommand, print its report, return 0 iff every check passed"""
    build, run = COMMANDS[command]
    args = build().parse_args(argv)
    try:
        report = run(args, cfg, progress)
    except NotAnIsometryError as exc:
        _LOGGER.error(exc)
        return 2
    print(report.to_json() if args.json else report.summary())
    _LOGGER.info("%s: %d checks, passed %s", command, len(report.checks), report.passed)
    return 0 if report.passed else 1
