"""Structured check reports: stable JSON plus a readable text rendering.

Every record names the mathematical statement it certifies (or carries
the tag "plumbing" for infrastructure checks), the parameters used, a
verdict, and the evidence.  Reports are deterministic: same config and
seeds give byte-identical JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PLUMBING = "plumbing"


@dataclass(frozen=True)
class CheckRecord:
    name: str
    statement: str  # the property being certified, or "plumbing"
    params: dict
    verdict: bool
    evidence: dict = field(default_factory=dict)
    seed: int | None = None
    informational: bool = False  # recorded but not gating

    def to_obj(self) -> dict:
        return {
            "name": self.name,
            "statement": self.statement,
            "params": _jsonable(self.params),
            "verdict": "pass" if self.verdict else "fail",
            "evidence": _jsonable(self.evidence),
            "seed": self.seed,
            "informational": self.informational,
        }


@dataclass
class Report:
    config: dict
    records: list[CheckRecord] = field(default_factory=list)

    def add(self, record: CheckRecord) -> None:
        self.records.append(record)

    @property
    def overall(self) -> bool:
        return all(r.verdict for r in self.records if not r.informational)

    def to_json(self) -> str:
        obj = {
            "config": _jsonable(self.config),
            "records": [r.to_obj() for r in self.records],
            "overall": "pass" if self.overall else "fail",
        }
        return json.dumps(obj, sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = []
        width = max((len(r.name) for r in self.records), default=8)
        for r in self.records:
            mark = "PASS" if r.verdict else "FAIL"
            if r.informational:
                mark = "info"
            lines.append(f"[{mark}] {r.name.ljust(width)}  {r.statement}")
            for key, value in sorted(_jsonable(r.evidence).items()):
                lines.append(f"       {key} = {value}")
        lines.append(f"overall: {'PASS' if self.overall else 'FAIL'}")
        return "\n".join(lines) + "\n"


def _jsonable(value):
    """Recursively coerce evidence values to JSON-stable types."""
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (str, int, bool)) or value is None:
        return value
    if isinstance(value, float):
        raise TypeError("reports must not contain floats; use exact strings")
    return str(value)
