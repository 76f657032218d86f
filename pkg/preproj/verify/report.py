"""Verification reports: one entry per check, serialized deterministically."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any

from preproj import __version__

REPORT_SCHEMA = 1


class CheckStatus(Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


@dataclass
class CheckResult:
    """Outcome of a single check.

    A failure always carries a witness; a skip always carries a reason.
    """
    name: str
    statement: str
    status: CheckStatus
    witness: dict[str, Any] = field(default_factory=dict)
    wall_time: float = 0.0
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASS

    def to_dict(self, include_timing: bool = True) -> dict[str, Any]:
        data: dict[str, Any] = {
            "name": self.name,
            "statement": self.statement,
            "status": self.status.value,
        }
        if self.witness:
            data["witness"] = self.witness
        if self.reason:
            data["reason"] = self.reason
        if include_timing:
            data["wall_time"] = round(self.wall_time, 4)
        return data


@dataclass
class VerificationReport:
    """All checks run for one instance."""
    instance: dict[str, Any]
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, result: CheckResult) -> None:
        self.checks.append(result)

    def extend(self, results: list[CheckResult]) -> None:
        self.checks.extend(results)

    def merge(self, other: VerificationReport) -> VerificationReport:
        return VerificationReport(self.instance, self.checks + other.checks)

    def sorted(self) -> VerificationReport:
        return VerificationReport(self.instance, sorted(self.checks, key=lambda c: c.name))

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status is CheckStatus.FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures

    def counts(self) -> dict[str, int]:
        out = {s.value: 0 for s in CheckStatus}
        for c in self.checks:
            out[c.status.value] += 1
        return out

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_dict(self, include_timing: bool = True) -> dict[str, Any]:
        return {
            "schema": REPORT_SCHEMA,
            "engine": __version__,
            "instance": self.instance,
            "summary": self.counts(),
            "checks": [c.to_dict(include_timing) for c in sorted(self.checks, key=lambda c: c.name)],
        }

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def save(self, path: str | Path, include_timing: bool = True) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json(include_timing), encoding="utf-8")
        return path
