"""Pass/fail reports shared by validation, verification and the CLI."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    check_id: str
    passed: bool
    detail: str = ""
    tag: str = ""

    def to_dict(self) -> dict:
        return {"id": self.check_id, "status": "pass" if self.passed else "fail",
                "detail": self.detail, "tag": self.tag}


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check_id: str, passed: bool, detail: str = "", tag: str = "") -> bool:
        self.checks.append(Check(check_id, bool(passed), detail, tag))
        return bool(passed)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.check_id, c.passed, c.detail, c.tag))

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def get(self, check_id: str) -> Check:
        for c in self.checks:
            if c.check_id == check_id:
                return c
        raise KeyError(check_id)

    def to_dict(self) -> dict:
        return {"title": self.title, "status": "pass" if self.passed else "fail",
                "checks": [c.to_dict() for c in self.checks]}

    def lines(self) -> list[str]:
        out = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            mark = "pass" if c.passed else "FAIL"
            tail = f" ({c.detail})" if c.detail else ""
            out.append(f"  [{mark}] {c.check_id}{tail}")
        return out

    def __bool__(self):
        return self.passed


class ValidationReport(Report):
    pass


class VerificationReport(Report):
    pass
