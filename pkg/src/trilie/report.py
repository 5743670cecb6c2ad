"""Structured pass/fail reports for law checks.

Every verifier in this package returns a CheckReport rather than a bare bool:
the caller gets the number of instances checked, the number skipped because a
table entry was missing, and a capped list of concrete counterexamples. A
check whose status is None was not run (its precondition failed); the report
says why.
"""

from __future__ import annotations

from dataclasses import dataclass, field

MAX_FAILURES = 5


@dataclass
class CheckReport:
    name: str
    passed: bool | None = True
    checked: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)
    failure_count: int = 0
    detail: str = ""

    def record(self, witness) -> None:
        """Record one failing instance. Keeps at most MAX_FAILURES witnesses."""
        self.passed = False
        self.failure_count += 1
        if len(self.failures) < MAX_FAILURES:
            self.failures.append(witness)

    def tick(self, n: int = 1) -> None:
        self.checked += n

    def skip(self, n: int = 1) -> None:
        self.skipped += n

    def block(self, reason: str) -> None:
        """Mark the check as not run (precondition failed)."""
        self.passed = None
        self.detail = reason

    @property
    def status(self) -> str:
        if self.passed is None:
            return "blocked"
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "status": self.status,
            "checked": self.checked,
            "skipped": self.skipped,
            "failures": self.failure_count,
        }
        if self.failures:
            d["witnesses"] = self.failures
        if self.detail:
            d["detail"] = self.detail
        return d

    def line(self) -> str:
        s = f"{self.name}: {self.status} ({self.checked} checked"
        if self.skipped:
            s += f", {self.skipped} skipped"
        if self.failure_count:
            s += f", {self.failure_count} failed"
        s += ")"
        if self.detail:
            s += f" [{self.detail}]"
        return s


@dataclass
class SuiteReport:
    name: str
    checks: list = field(default_factory=list)

    def add(self, check: CheckReport) -> CheckReport:
        self.checks.append(check)
        return check

    def extend(self, other: "SuiteReport") -> None:
        self.checks.extend(other.checks)

    @property
    def passed(self) -> bool:
        """True when every check that ran passed. Blocked checks don't fail the suite."""
        return all(c.passed is not False for c in self.checks)

    @property
    def all_ran(self) -> bool:
        return all(c.passed is not None for c in self.checks)

    def find(self, name: str) -> CheckReport:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_text(self) -> str:
        lines = [f"suite {self.name}: {'pass' if self.passed else 'FAIL'}"]
        lines.extend("  " + c.line() for c in self.checks)
        return "\n".join(lines)
