"""Tiny pass/fail report container shared by all verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    """Named list of checks; a report is ok iff every check passed."""

    title: str
    checks: list[CheckResult] = field(default_factory=list)

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(CheckResult(name, bool(passed), detail))
        return bool(passed)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def merge(self, other: "Report") -> None:
        for c in other.checks:
            self.checks.append(CheckResult(f"{other.title}: {c.name}",
                                           c.passed, c.detail))

    def as_dict(self) -> dict:
        return {
            "title": self.title,
            "ok": self.ok,
            "checks": [{"name": c.name, "passed": c.passed,
                        **({"detail": c.detail} if c.detail else {})}
                       for c in self.checks],
        }

    def __str__(self) -> str:
        lines = [f"[{'PASS' if self.ok else 'FAIL'}] {self.title}"]
        for c in self.checks:
            mark = "ok " if c.passed else "FAIL"
            lines.append(f"  {mark} {c.name}" + (f" ({c.detail})" if c.detail else ""))
        return "\n".join(lines)
