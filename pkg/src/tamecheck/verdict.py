"""Three-valued verdicts with JSON-ready evidence."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

HOLDS = "HOLDS"
FAILS = "FAILS"
UNDETERMINED = "UNDETERMINED"
STATUSES = (HOLDS, FAILS, UNDETERMINED)

# refinements: a HOLDS resting on a Zariski-closure step, and an
# UNDETERMINED that held at every sampled base point
CAVEAT = "caveat"
ON_SAMPLE = "on-sample"


@dataclass
class Verdict:
    status: str
    evidence: dict[str, Any] = field(default_factory=dict)
    scope: str = "germ at the origin"
    flag: str | None = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if self.flag == CAVEAT and self.status != HOLDS:
            raise ValueError("only HOLDS can carry a caveat")
        if self.flag == ON_SAMPLE and self.status != UNDETERMINED:
            raise ValueError("holds-on-sample is a refinement of UNDETERMINED")

    @property
    def binding(self) -> bool:
        """Unconditional HOLDS or FAILS; only these constrain the audit."""
        return self.status != UNDETERMINED and self.flag is None

    @property
    def label(self) -> str:
        if self.flag == CAVEAT:
            return "HOLDS (with caveat)"
        if self.flag == ON_SAMPLE:
            return "UNDETERMINED (holds-on-sample)"
        return self.status

    def strict(self) -> "Verdict":
        """Demote HOLDS-with-caveat to UNDETERMINED."""
        if self.flag != CAVEAT:
            return self
        ev = dict(self.evidence)
        ev["demoted_from"] = "HOLDS with caveat"
        return Verdict(UNDETERMINED, ev, self.scope, None)

    def to_dict(self) -> dict:
        return {"status": self.status, "flag": self.flag, "scope": self.scope, "evidence": self.evidence}

    @classmethod
    def from_dict(cls, d: dict) -> "Verdict":
        return cls(d["status"], d.get("evidence", {}), d.get("scope", ""), d.get("flag"))


def undetermined(reason: str, scope: str = "germ at the origin", **extra) -> Verdict:
    return Verdict(UNDETERMINED, {"kind": "note", "reason": reason, **extra}, scope)


def budget_verdict(exc: Exception, scope: str = "germ at the origin") -> Verdict:
    return Verdict(UNDETERMINED, {"kind": "budget", "reason": str(exc)}, scope)
