"""
File Chain (see DEVELOPER.md):
Doc Version: v1.0.0
Date Modified: 2026-10-19

- Called by: reports.py (graph and classify-all commands), tests
- Reads from: data/graphs.yaml
- Writes to: None
- Calls into: dualgraph.py, networkx.algorithms.isomorphism, enlighten

Purpose: Built-in catalog of defining and intermediate dual graphs and the
         replay that decides which of them survive.

Blast Radius: MEDIUM - the classify-all verdict and the --name lookups of the
              graph command.
"""

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from functools import lru_cache
from importlib.resources import files
from typing import Any, Mapping

import enlighten
import yaml
from networkx.algorithms import isomorphism

from zeroent.dualgraph import (
    DualGraph,
    GraphFiber,
    NotUnique,
    Violation,
    contradiction_scan,
    find_fiber,
    span_is_E10,
    unique_nonextremal,
)
from zeroent.models import Check, InvalidGraphError

_LOGGER = logging.getLogger(__name__)

DEFINING = ("A7~", "E6~", "D6+A1~")
_META_KEYS = ("invariant_support", "conductrix", "characteristic", "aut_group", "case")


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    role: str
    graph: DualGraph
    f0: tuple[str, ...]
    rule: str
    expect: Mapping[str, Any] = field(default_factory=dict, hash=False, compare=False)


@dataclass
class CatalogResult:
    entry: CatalogEntry
    spans_e10: bool
    nonextremal: GraphFiber | NotUnique | None
    violations: list[Violation]
    survivor: bool
    expectation: Check

    def to_dict(self) -> dict[str, Any]:
        if isinstance(self.nonextremal, GraphFiber):
            nonextremal: Any = list(self.nonextremal.support)
        elif isinstance(self.nonextremal, NotUnique):
            nonextremal = {"not_unique": [list(f.support) for f in self.nonextremal.candidates]}
        else:
            nonextremal = None
        return {
            "id": self.entry.id,
            "role": self.entry.role,
            "spans_e10": self.spans_e10,
            "nonextremal": nonextremal,
            "violations": [v.to_dict() for v in self.violations],
            "survivor": self.survivor,
            "expectation": self.expectation.to_dict(),
        }


@dataclass
class CatalogReport:
    results: list[CatalogResult]
    checks: list[Check]

    @property
    def survivors(self) -> list[str]:
        return [r.entry.id for r in self.results if r.survivor]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _entry(raw: Mapping[str, Any]) -> CatalogEntry:
    meta = {key: raw[key] for key in _META_KEYS if key in raw}
    graph = DualGraph.from_edges(raw["id"], raw["vertices"], raw["edges"], meta)
    return CatalogEntry(raw["id"], raw["role"], graph, tuple(raw["f0"]), raw["rule"], dict(raw.get("expect", {})))


@lru_cache(maxsize=1)
def _load() -> tuple[CatalogEntry, ...]:
    text = (files("zeroent") / "data" / "graphs.yaml").read_text(encoding="utf-8")
    return tuple(_entry(raw) for raw in yaml.safe_load(text)["graphs"])


def builtin_catalog() -> dict[str, CatalogEntry]:
    return {entry.id: entry for entry in _load()}


def catalog_entry(name: str) -> CatalogEntry:
    catalog = builtin_catalog()
    if name not in catalog:
        raise InvalidGraphError(f"no graph named {name!r}, choose from {', '.join(catalog)}")
    return catalog[name]


def embeds_in(small: DualGraph, big: DualGraph) -> bool:
    """small is an induced subgraph of big, edge weights respected"""
    matcher = isomorphism.GraphMatcher(
        big.to_networkx(),
        small.to_networkx(),
        edge_match=lambda a, b: a["weight"] == b["weight"],
    )
    return matcher.subgraph_is_isomorphic()


def _expectation(entry: CatalogEntry, survivor: bool, violations: list[Violation]) -> Check:
    kind = entry.expect.get("kind")
    if kind == "survivor":
        return Check(f"{entry.id}: survives", survivor)
    if kind == "violation":
        wanted = entry.expect["type"]
        found = sorted({v.fiber_type for v in violations})
        hit = any(wanted in v.fiber.kodaira_candidates for v in violations)
        return Check(f"{entry.id}: violation of type {wanted}", hit, ", ".join(found) or "no violation")
    if kind == "extends":
        target = entry.expect["target"]
        catalog = builtin_catalog()
        if target not in catalog:
            return Check(f"{entry.id}: extends {target}", False, "unknown target")
        return Check(f"{entry.id}: extends {target}", embeds_in(entry.graph, catalog[target].graph))
    return Check(f"{entry.id}: no expectation", not survivor)


def classify_entry(entry: CatalogEntry) -> CatalogResult:
    g = entry.graph
    spans = span_is_E10(g)
    nonextremal: GraphFiber | NotUnique | None = None
    f0 = find_fiber(g, entry.f0)
    unique = False
    if spans:
        nonextremal = unique_nonextremal(g)
        if isinstance(nonextremal, GraphFiber):
            unique = True
            f0 = nonextremal
    violations = contradiction_scan(g, f0, entry.rule)
    survivor = spans and unique and not violations
    _LOGGER.info("%s: E10 %s, unique %s, %d violations", entry.id, spans, unique, len(violations))
    return CatalogResult(entry, spans, nonextremal, violations, survivor, _expectation(entry, survivor, violations))


def classify_catalog(threads: int = 1, progress: bool = False) -> CatalogReport:
    entries = list(_load())
    manager = None
    counter = None
    if progress:
        manager = enlighten.get_manager()
        counter = manager.counter(total=len(entries), desc="graphs", unit="graphs", leave=False, color="cyan")

    results: dict[str, CatalogResult] = {}
    try:
        with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
            futures = {pool.submit(classify_entry, entry): entry.id for entry in entries}
            for fut in as_completed(futures):
                results[futures[fut]] = fut.result()
                if counter is not None:
                    counter.update()
    finally:
        if counter is not None:
            counter.close()
        if manager is not None:
            manager.stop()

    ordered = [results[key] for key in sorted(results)]
    survivors = sorted(r.entry.id for r in ordered if r.survivor)
    checks = [Check("survivors are exactly the defining graphs", survivors == sorted(DEFINING), ", ".join(survivors))]
    for result in ordered:
        checks.append(result.expectation)
        if result.entry.role == "defining" and isinstance(result.nonextremal, GraphFiber):
            declared = set(result.entry.f0) == set(result.nonextremal.support)
            checks.append(Check(f"{result.entry.id}: non-extremal fiber is the declared f0", declared))
    return CatalogReport(ordered, checks)
