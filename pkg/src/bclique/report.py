from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional


class Verdict(str, enum.Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    NOT_APPLICABLE = "not-applicable"
    UNRESOLVED = "unresolved"
    CONSISTENT = "unresolved-consistent"


@dataclass
class CheckReport:
    claim: str
    verdict: Verdict
    witness: Optional[dict[str, Any]] = None
    notes: list[str] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict is Verdict.VIOLATED and not self.witness:
            raise ValueError(f"{self.claim}: a violated verdict needs a witness")

    @property
    def violated(self) -> bool:
        return self.verdict is Verdict.VIOLATED

    def to_json(self) -> dict:
        out = {"claim": self.claim, "verdict": self.verdict.value}
        if self.witness is not None:
            out["witness"] = self.witness
        out["notes"] = list(self.notes)
        if self.details:
            out["details"] = self.details
        return out

    @classmethod
    def from_json(cls, data: dict) -> "CheckReport":
        return cls(
            data["claim"],
            Verdict(data["verdict"]),
            data.get("witness"),
            list(data.get("notes", [])),
            dict(data.get("details", {})),
        )


_FRAC = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_fraction(text: str) -> Fraction:
    """Parse ``p/q`` or an integer; decimals are refused to avoid silent rounding."""
    text = text.strip()
    if not _FRAC.match(text):
        raise ValueError(f"expected a rational 'p/q' or integer, got {text!r}")
    value = Fraction(text)
    return value


def frac_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def merge_verdicts(reports: list[CheckReport]) -> Verdict:
    verdicts = {r.verdict for r in reports}
    for v in (Verdict.VIOLATED, Verdict.UNRESOLVED, Verdict.CONSISTENT, Verdict.HOLDS):
        if v in verdicts:
            return v
    return Verdict.NOT_APPLICABLE
