"""
File Chain (see DEVELOPER.md):
Doc Version: v1.0.0
Date Modified: 2026-10-19

- Called by: dualgraph.py (allowed-fiber rules), reports.py (tables, mw, height), tests
- Reads from: data/tables.yaml
- Writes to: None
- Calls into: lattice.py (RootSystemType), pyyaml

Purpose: Kodaira fiber catalog, the extremal fibration tables, Shioda-Tate rank,
         Mordell-Weil lookup, MW actions on fibers, allowed-fiber lists and the
         height pairing at lookup level.

Blast Radius: MEDIUM - the contradiction scan of dualgraph.py decides its
              verdicts with the allowed lists defined here.

Zeroent Fibrations

PURPOSE:
    Tables are static YAML keyed by the sorted multiset of reducible fiber
    labels. At Gram level I2/III and I3/IV cannot be told apart; lookups use
    whatever label the caller supplies.

KEY EXPORTS:
    - KodairaType, Multiplicity, FiberConfiguration
    - MordellWeilGroup, MWFiberAction, TableRow, MWLookup, RowAudit
    - shioda_tate_rank, is_extremal, mw_lookup, torsion_disc_consistency
    - allowed_by_prop_alternative, allowed_by_cor_alternative,
      allowed_by_lemma_excludeXX, allowed_by_rule, ALLOWED_RULES
    - height, euler_number_sum, table_rows, audit_table
"""

import logging
import math
import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from importlib.resources import files
from typing import Any, Iterable, Sequence

import yaml

from zeroent.lattice import RootSystemType
from zeroent.models import Check, InvalidFiberError, NotExtremalOrUnknown

_LOGGER = logging.getLogger(__name__)

RATIONAL_ROOT_RANK = 8
EULER_TOTAL = 12

# root type, component count, simple components, euler number
_ADDITIVE = {
    "II": ((), 1, 1, 2),
    "III": ((("A", 1),), 2, 2, 3),
    "IV": ((("A", 2),), 3, 3, 4),
    "IV*": ((("E", 6),), 7, 3, 8),
    "III*": ((("E", 7),), 8, 2, 9),
    "II*": ((("E", 8),), 9, 1, 10),
}
_ADDITIVE_HEIGHT = {
    "III": Fraction(1, 2),
    "IV": Fraction(2, 3),
    "IV*": Fraction(4, 3),
    "III*": Fraction(3, 2),
}
_LABEL = re.compile(r"I(\d+)(\*?)")


@dataclass(frozen=True, order=True)
class KodairaType:
    """Kodaira fiber label with its lattice data"""

    label: str

    @classmethod
    @lru_cache(maxsize=None)
    def parse(cls, text: str) -> "KodairaType":
        label = text.strip().replace("_", "").replace("^", "").replace(" ", "")
        if label in _ADDITIVE:
            return cls(label)
        match = _LABEL.fullmatch(label)
        if not match:
            raise InvalidFiberError(f"unknown Kodaira type {text!r}")
        n, star = int(match.group(1)), match.group(2)
        if not star and n < 1:
            raise InvalidFiberError(f"I{n} is not a singular fiber")
        return cls(f"I{n}{star}")

    @property
    def is_star(self) -> bool:
        return self.label.startswith("I") and self.label.endswith("*") and self.label not in _ADDITIVE

    @property
    def is_multiplicative(self) -> bool:
        return _LABEL.fullmatch(self.label) is not None and not self.is_star

    @property
    def n(self) -> int:
        match = _LABEL.fullmatch(self.label)
        return int(match.group(1)) if match else 0

    @property
    def kind(self) -> str:
        return "multiplicative" if self.is_multiplicative else "additive"

    @property
    def root_type(self) -> RootSystemType:
        if self.is_multiplicative:
            return RootSystemType.of([("A", self.n - 1)])
        if self.is_star:
            return RootSystemType.of([("D", self.n + 4)])
        return RootSystemType.of(_ADDITIVE[self.label][0])

    @property
    def component_count(self) -> int:
        if self.is_multiplicative:
            return self.n
        if self.is_star:
            return self.n + 5
        return _ADDITIVE[self.label][1]

    @property
    def simple_component_count(self) -> int:
        if self.is_multiplicative:
            return self.n
        if self.is_star:
            return 4
        return _ADDITIVE[self.label][2]

    @property
    def euler_number(self) -> int:
        if self.is_multiplicative:
            return self.n
        if self.is_star:
            return self.n + 6
        return _ADDITIVE[self.label][3]

    @property
    def is_reducible(self) -> bool:
        return self.component_count > 1

    def height_contribution(self, component: int) -> Fraction:
        """local height correction of a section meeting the given simple component"""
        if not 0 <= component < self.simple_component_count:
            raise InvalidFiberError(f"{self.label} has no simple component {component}")
        if component == 0:
            return Fraction(0)
        if self.is_multiplicative:
            return Fraction(component * (self.n - component), self.n)
        if self.is_star:
            return Fraction(1) if component == 1 else 1 + Fraction(self.n, 4)
        return _ADDITIVE_HEIGHT[self.label]

    def __str__(self) -> str:
        return self.label


class Multiplicity(str, Enum):
    SIMPLE = "simple"
    DOUBLE = "double"


def _expand(tokens: Iterable[str]) -> list[str]:
    """'4xIII' -> four 'III' entries"""
    out = []
    for token in tokens:
        token = token.strip()
        if not token:
            continue
        match = re.fullmatch(r"(\d+)\s*[x×]\s*(.+)", token)
        if match:
            out += [match.group(2)] * int(match.group(1))
        else:
            out.append(token)
    return out


@dataclass(frozen=True)
class FiberConfiguration:
    fibers: tuple[tuple[KodairaType, Multiplicity], ...] = ()

    def __post_init__(self):
        doubles = sum(1 for _, mult in self.fibers if mult is Multiplicity.DOUBLE)
        if doubles > 2:
            raise InvalidFiberError(f"{doubles} double fibers, at most 2 allowed")
        rank = sum(kodaira.root_type.rank for kodaira, _ in self.fibers)
        if rank > RATIONAL_ROOT_RANK:
            raise InvalidFiberError(f"root rank {rank} > {RATIONAL_ROOT_RANK}")
        object.__setattr__(self, "fibers", tuple(sorted(self.fibers, key=lambda f: (f[0].label, f[1].value))))

    @classmethod
    def of(cls, labels: Iterable[str | KodairaType]) -> "FiberConfiguration":
        fibers = []
        for item in labels:
            if isinstance(item, KodairaType):
                fibers.append((item, Multiplicity.SIMPLE))
                continue
            for token in _expand([item]):
                label, _, mult = token.partition(":")
                fibers.append((KodairaType.parse(label), Multiplicity(mult.strip() or "simple")))
        return cls(tuple(fibers))

    @classmethod
    def parse(cls, text: str) -> "FiberConfiguration":
        """'I8,III' or 'I4*:double, 4xIII'"""
        return cls.of(_expand(text.split(",")))

    @property
    def types(self) -> tuple[KodairaType, ...]:
        return tuple(kodaira for kodaira, _ in self.fibers)

    @property
    def reducible(self) -> tuple[KodairaType, ...]:
        return tuple(kodaira for kodaira in self.types if kodaira.is_reducible)

    @property
    def key(self) -> tuple[str, ...]:
        return tuple(sorted(kodaira.label for kodaira in self.reducible))

    @property
    def root_type(self) -> RootSystemType:
        total = RootSystemType()
        for kodaira in self.types:
            total = total + kodaira.root_type
        return total

    def __str__(self) -> str:
        parts = [f"{k.label}:double" if m is Multiplicity.DOUBLE else k.label for k, m in self.fibers]
        return "(" + ", ".join(parts) + ")"


@dataclass(frozen=True)
class MordellWeilGroup:
    rank: int = 0
    torsion: tuple[int, ...] = ()

    @property
    def torsion_order(self) -> int:
        return math.prod(self.torsion)

    @property
    def is_2_elementary(self) -> bool:
        return all(d == 2 for d in self.torsion)

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.rank
        if not parts:
            return "{0}"
        counts = Counter(parts)
        if len(counts) == 1 and len(parts) > 1:
            return f"({parts[0]})^{len(parts)}"
        return " x ".join(parts)


@dataclass(frozen=True)
class MWFiberAction:
    kind: str
    k: int | None = None

    @classmethod
    def parse(cls, text: str) -> "MWFiberAction":
        match = re.fullmatch(r"rotation\((\d+)\)", text.strip())
        if match:
            return cls("rotation", int(match.group(1)))
        if text in ("trivial", "reflection-central", "transitive-simple"):
            return cls(text)
        raise InvalidFiberError(f"unknown MW action {text!r}")

    def order(self, fiber: KodairaType) -> int:
        """size of the image of MW acting on the fiber's dual graph"""
        if self.kind == "trivial":
            return 1
        if self.kind == "reflection-central":
            return 2
        if self.kind == "rotation":
            return self.k or 1
        return fiber.simple_component_count

    def __str__(self) -> str:
        return f"rotation({self.k})" if self.kind == "rotation" else self.kind


@dataclass(frozen=True)
class TableRow:
    fibers: tuple[KodairaType, ...]
    group: MordellWeilGroup
    actions: tuple[MWFiberAction, ...]
    quasi_elliptic: bool

    @property
    def configuration(self) -> FiberConfiguration:
        return FiberConfiguration.of(self.fibers)

    @property
    def label(self) -> str:
        return ", ".join(k.label for k in self.fibers)


@dataclass(frozen=True)
class MWLookup:
    group: MordellWeilGroup
    actions: tuple[tuple[KodairaType, MWFiberAction], ...]
    row: TableRow

    def to_dict(self) -> dict[str, Any]:
        return {
            "group": str(self.group),
            "torsion": list(self.group.torsion),
            "actions": [{"fiber": k.label, "action": str(a)} for k, a in self.actions],
        }


def _parse_rows(entries: Sequence[dict], quasi_elliptic: bool) -> tuple[TableRow, ...]:
    rows = []
    for entry in entries:
        fibers: list[KodairaType] = []
        actions: list[MWFiberAction] = []
        for token, action in zip(entry["fibers"], entry["actions"]):
            expanded = _expand([token])
            fibers += [KodairaType.parse(label) for label in expanded]
            actions += [MWFiberAction.parse(action)] * len(expanded)
        group = MordellWeilGroup(0, tuple(int(d) for d in entry["mw"]))
        rows.append(TableRow(tuple(fibers), group, tuple(actions), quasi_elliptic))
    return tuple(rows)


@lru_cache(maxsize=1)
def _tables() -> dict[str, Any]:
    text = (files("zeroent") / "data" / "tables.yaml").read_text(encoding="utf-8")
    data = yaml.safe_load(text)
    allowed = {
        rule: frozenset(tuple(sorted(KodairaType.parse(l).label for l in _expand(entry))) for entry in entries)
        for rule, entries in data["allowed"].items()
    }
    return {
        "elliptic": _parse_rows(data["elliptic"], False),
        "quasi_elliptic": _parse_rows(data["quasi_elliptic"], True),
        "allowed": allowed,
    }


def table_rows(number: int) -> tuple[TableRow, ...]:
    """1: extremal elliptic, 2: quasi-elliptic in characteristic 2"""
    if number == 1:
        return _tables()["elliptic"]
    if number == 2:
        return _tables()["quasi_elliptic"]
    raise ValueError(f"no table {number}")


def allowed_configurations(rule: str) -> frozenset[tuple[str, ...]]:
    try:
        return _tables()["allowed"][rule]
    except KeyError:
        raise InvalidFiberError(f"unknown rule {rule!r}, choose from {', '.join(ALLOWED_RULES)}") from None


ALLOWED_RULES = ("prop_alternative", "cor_alternative", "lemma_excludeXX")


def shioda_tate_rank(c: FiberConfiguration) -> int:
    rank = c.root_type.rank
    if rank > RATIONAL_ROOT_RANK:
        raise InvalidFiberError(f"{c} has root rank {rank} > {RATIONAL_ROOT_RANK}")
    return RATIONAL_ROOT_RANK - rank


def is_extremal(c: FiberConfiguration, quasi_elliptic: bool = False) -> bool:
    if quasi_elliptic:
        return True
    return shioda_tate_rank(c) == 0


def _find_row(c: FiberConfiguration, quasi_elliptic: bool) -> TableRow:
    for row in table_rows(2 if quasi_elliptic else 1):
        if row.configuration.key == c.key:
            return row
    kind = "quasi-elliptic" if quasi_elliptic else "elliptic"
    raise NotExtremalOrUnknown(f"{c} is not an extremal {kind} configuration")


def mw_lookup(c: FiberConfiguration, quasi_elliptic: bool = False) -> MWLookup:
    row = _find_row(c, quasi_elliptic)
    return MWLookup(row.group, tuple(zip(row.fibers, row.actions)), row)


def torsion_disc_consistency(c: FiberConfiguration, quasi_elliptic: bool = False) -> bool:
    """|torsion|^2 == |det(root lattice)|, with the det taken from the Gram matrix"""
    row = _find_row(c, quasi_elliptic)
    return row.group.torsion_order**2 == abs(row.configuration.root_type.lattice().det)


def allowed_by_rule(c: FiberConfiguration, rule: str) -> bool:
    return c.key in allowed_configurations(rule)


def allowed_by_prop_alternative(c: FiberConfiguration) -> bool:
    return allowed_by_rule(c, "prop_alternative")


def allowed_by_cor_alternative(c: FiberConfiguration) -> bool:
    return allowed_by_rule(c, "cor_alternative")


def allowed_by_lemma_excludeXX(c: FiberConfiguration) -> bool:
    return allowed_by_rule(c, "lemma_excludeXX")


def fits_allowed(labels: Sequence[str], rule: str) -> bool:
    """True when the labels form a sub-multiset of some allowed configuration"""
    wanted = Counter(labels)
    for config in allowed_configurations(rule):
        available = Counter(config)
        if all(available[label] >= count for label, count in wanted.items()):
            return True
    return False


def height(chi: int, p_dot_o: int, component_hits: Iterable[tuple[KodairaType | str, int]]) -> Fraction:
    """2 chi + 2 (P.O) minus the local contributions of the fibers the section hits"""
    total = Fraction(2 * chi + 2 * p_dot_o)
    for kodaira, component in component_hits:
        if isinstance(kodaira, str):
            kodaira = KodairaType.parse(kodaira)
        total -= kodaira.height_contribution(component)
    return total


def euler_number_sum(c: FiberConfiguration) -> int:
    return sum(kodaira.euler_number for kodaira in c.types)


@dataclass
class RowAudit:
    row: TableRow
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_dict(self) -> dict[str, Any]:
        return {
            "fibers": self.row.label,
            "mw": str(self.row.group),
            "actions": [str(a) for a in self.row.actions],
            "checks": [check.to_dict() for check in self.checks],
            "passed": self.passed,
        }


def audit_row(row: TableRow) -> RowAudit:
    c = row.configuration
    order = row.group.torsion_order
    det = abs(c.root_type.lattice().det)
    checks = [
        Check("shioda_tate_rank", shioda_tate_rank(c) == 0, shioda_tate_rank(c)),
        Check("torsion_squared_equals_det", order**2 == det, {"torsion_order": order, "det": det}),
        Check(
            "action_orders_divide_mw",
            all(order % action.order(fiber) == 0 for fiber, action in zip(row.fibers, row.actions)),
            [action.order(fiber) for fiber, action in zip(row.fibers, row.actions)],
        ),
    ]
    if row.quasi_elliptic:
        checks.append(Check("mw_2_elementary", row.group.is_2_elementary, str(row.group)))
    else:
        euler = euler_number_sum(c)
        checks.append(Check("euler_at_most_12", euler <= EULER_TOTAL, euler))
    return RowAudit(row, checks)


def audit_table(number: int) -> list[RowAudit]:
    audits = [audit_row(row) for row in table_rows(number)]
    _LOGGER.info("table %d: %d/%d rows pass", number, sum(a.passed for a in audits), len(audits))
    return audits
