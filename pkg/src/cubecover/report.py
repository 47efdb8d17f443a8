"""Verification reports with a stable JSON form."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .scalar import Fp, format_scalar

PASS = "pass"
FAIL = "fail"
EXPLORATORY = "exploratory"


def exact(value: Any) -> Any:
    """Recursively replace numbers by exact decimal strings."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, Fraction, Fp)):
        return format_scalar(value)
    if isinstance(value, float):
        raise TypeError("floats are not allowed in reports")
    if isinstance(value, dict):
        return {str(k): exact(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [exact(v) for v in value]
    return value


@dataclass
class Report:
    command: str
    params: dict = field(default_factory=dict)
    details: list = field(default_factory=list)
    timing_ms: int = 0
    exploratory: bool = False
    _t0: float = field(default_factory=time.perf_counter, repr=False, compare=False)

    def add(self, passed: bool | None, **record) -> dict:
        """Append a detail record; ``passed=None`` marks an informational record."""
        rec = {"passed": passed, **record}
        self.details.append(rec)
        return rec

    @property
    def failures(self) -> list[dict]:
        return [d for d in self.details if d.get("passed") is False]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def status(self) -> str:
        if self.failures:
            return FAIL
        return EXPLORATORY if self.exploratory else PASS

    def stop_clock(self) -> "Report":
        self.timing_ms = int((time.perf_counter() - self._t0) * 1000)
        return self

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "command": self.command,
            "params": exact(self.params),
            "status": self.status,
            "details": exact(self.details),
            "timing_ms": self.timing_ms if timing else 0,
        }

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        rep = cls(data["command"], dict(data["params"]), list(data["details"]), int(data["timing_ms"]))
        rep.exploratory = data["status"] == EXPLORATORY
        return rep

    def summary(self) -> str:
        head = f"{self.command}: {self.status.upper()}"
        if self.failures:
            first = self.failures[0]
            shown = {k: v for k, v in exact(first).items() if k != "passed"}
            head += f" (first failure: {shown})"
        return head
