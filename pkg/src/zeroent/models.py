"""
File Chain (see DEVELOPER.md):
Doc Version: v1.0.0
Date Modified: 2026-10-19

- Called by: every zeroent module, main.py
- Purpose: Error hierarchy and small shared records

Zeroent Data Models - Errors and Shared Records

PURPOSE:
    Defines the exception hierarchy raised by the library and the check record
    that reports collect. Every domain error derives from ZeroentError so the
    CLI can map them to exit codes in one place.

WHO READS ME:
    - main.py / reports.py: catch ZeroentError, NotAnIsometryError
    - exact.py, lattice.py, isometry.py, fibration.py, dualgraph.py,
      finitefield.py, weierstrass.py: raise the errors below

WHO I READ:
    - None (leaf module, no internal dependencies)

DEPENDENCIES:
    - dataclasses: @dataclass decorator

KEY EXPORTS:
    - ZeroentError: Base exception class for all zeroent errors
    - Check: one named pass/fail assertion of a report
"""

from dataclasses import dataclass, field
from typing import Any


class ZeroentError(Exception):
    """Base class for all errors raised by zeroent"""


class InvalidLatticeError(ZeroentError):
    """unknown lattice name, asymmetric or malformed Gram matrix"""


class DegenerateLatticeError(ZeroentError):
    """a non-degenerate lattice was required"""


class NotDefiniteError(ZeroentError):
    """a negative definite lattice was required"""


class SignatureError(ZeroentError):
    """a lattice of signature (1, n) was required"""


class NotAnIsometryError(ZeroentError):
    """matrix does not preserve the Gram form"""


class TransvectionError(ZeroentError):
    """preconditions of an Eichler transvection do not hold"""


class OverlatticeLimitError(ZeroentError):
    """discriminant group too large to enumerate"""


class NotExtremalOrUnknown(ZeroentError):
    """fiber configuration is not a row of the extremal tables"""


class InvalidFiberError(ZeroentError):
    """bad Kodaira label, component index or configuration"""


class InvalidGraphError(ZeroentError):
    """dual graph data violates the intersection matrix rules"""


class FieldError(ZeroentError):
    """unknown field, mixed fields or division by zero"""


class InfiniteAutBroken(ZeroentError):
    """Weierstrass family outside the range where the analysis applies"""


class InvalidRootsError(ZeroentError):
    """root multiset unusable for the case classification"""


class ReportInputError(ZeroentError):
    """malformed command input"""


@dataclass
class Check:
    """a named assertion inside a report"""

    name: str
    passed: bool
    detail: Any = field(default=None)

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "passed": bool(self.passed), "detail": self.detail}
