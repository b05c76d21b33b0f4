from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass
class Check:
    name: str
    expected: Any
    observed: Any

    @property
    def passed(self) -> bool:
        return self.expected == self.observed

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "expected": self.expected,
            "observed": self.observed,
            "passed": self.passed,
        }


@dataclass
class ExperimentReport:
    name: str
    parameters: dict
    checks: list[Check] = field(default_factory=list)
    wall_clock: float = 0.0
    seed: Optional[int] = None
    details: dict = field(default_factory=dict)
    _start: float = field(default_factory=time.perf_counter, repr=False)

    def check(self, name: str, expected: Any, observed: Any) -> Check:
        c = Check(name, expected, observed)
        self.checks.append(c)
        return c

    def finish(self) -> "ExperimentReport":
        self.wall_clock = time.perf_counter() - self._start
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        out = {
            "experiment": self.name,
            "parameters": self.parameters,
            "checks": [c.to_json() for c in self.checks],
            "wall_clock_s": round(self.wall_clock, 4),
            "passed": self.passed,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if self.details:
            out["details"] = self.details
        return out
