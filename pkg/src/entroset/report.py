"""Check reports: evaluated sides of an inequality plus a verdict.

Reports are plain value objects. `lhs`/`rhs` are floats (log-space for
cardinality checks); when the comparison was settled by exact integer or
rational arithmetic, `provenance` is "exact" and the exact quantities are
carried in `details` as strings. `witnesses` holds counterexample
structures for set-equality style checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

HOLDS = "holds"
VIOLATED = "violated"
INCONCLUSIVE = "inconclusive"

#: CLI exit codes per verdict; anything unlisted maps to success.
EXIT_CODES = {HOLDS: 0, VIOLATED: 1, INCONCLUSIVE: 3}


@dataclass(frozen=True)
class CheckReport:
    verdict: str
    lhs: float | None = None
    rhs: float | None = None
    slack: float | None = None
    witnesses: tuple = ()
    provenance: str = "float"
    details: dict[str, Any] = field(default_factory=dict, hash=False)

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def exit_code(self) -> int:
        return EXIT_CODES.get(self.verdict, 0)

    def to_json(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"verdict": self.verdict}
        if self.lhs is not None:
            doc["lhs"] = self.lhs
        if self.rhs is not None:
            doc["rhs"] = self.rhs
        if self.slack is not None:
            doc["slack"] = self.slack
        doc["witnesses"] = [_jsonable(w) for w in self.witnesses]
        doc["provenance"] = self.provenance
        if self.details:
            doc.update({k: _jsonable(v) for k, v in self.details.items()})
        return doc


def _jsonable(value):
    from fractions import Fraction

    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def verdict_from_slack(slack: float, tolerance: float) -> str:
    """holds iff the inequality lhs <= rhs is satisfied within tolerance."""
    return HOLDS if slack >= -tolerance else VIOLATED
