"""Check and report containers shared by the verification suites and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    """One verified identity: a name, the two rendered sides, and the verdict."""

    name: str
    lhs: str
    rhs: str
    passed: bool


@dataclass
class Report:
    """Ordered collection of checks belonging to one named suite."""

    suite: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, lhs: str, rhs: str, passed: bool) -> Check:
        check = Check(name, lhs, rhs, passed)
        self.checks.append(check)
        return check

    def equal(self, name: str, lhs, rhs) -> Check:
        """Record an equality check between two rendered objects."""
        return self.add(name, _render(lhs), _render(rhs), lhs == rhs)

    def true(self, name: str, condition: bool, detail: str = "") -> Check:
        return self.add(name, detail or "holds", "holds", bool(condition))

    @property
    def passed(self) -> int:
        return sum(1 for c in self.checks if c.passed)

    @property
    def failed(self) -> int:
        return sum(1 for c in self.checks if not c.passed)

    @property
    def all_passed(self) -> bool:
        return self.failed == 0

    def extend(self, other: "Report"):
        self.checks.extend(other.checks)

    def to_text(self) -> str:
        lines = [f"suite: {self.suite}"]
        for c in self.checks:
            mark = "ok " if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.name}")
            if not c.passed:
                lines.append(f"         lhs: {c.lhs}")
                lines.append(f"         rhs: {c.rhs}")
        lines.append(f"  {self.passed} passed, {self.failed} failed")
        return "\n".join(lines)

    def to_json(self) -> str:
        payload = {
            "suite": self.suite,
            "checks": [
                {"name": c.name, "lhs": c.lhs, "rhs": c.rhs, "pass": c.passed}
                for c in self.checks
            ],
            "passed": self.passed,
            "failed": self.failed,
        }
        return json.dumps(payload, sort_keys=True)


def _render(obj) -> str:
    if isinstance(obj, str):
        return obj
    render = getattr(obj, "render", None)
    if callable(render):
        return render()
    return repr(obj)
