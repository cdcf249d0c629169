"""Verdict records shared by the verifiers and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "PASS"
FAIL = "FAIL"
UNVERIFIED = "UNVERIFIED"


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


def check(name, ok, detail="") -> Check:
    return Check(name, PASS if ok else FAIL, detail)


@dataclass
class CheckList:
    """An ordered list of checks; truthy iff every check passed."""

    checks: list = field(default_factory=list)

    def add(self, name, ok, detail="") -> Check:
        c = check(name, ok, detail)
        self.checks.append(c)
        return c

    def extend(self, other):
        self.checks.extend(other.checks if isinstance(other, CheckList) else other)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.ok

    def __iter__(self):
        return iter(self.checks)

    def __len__(self):
        return len(self.checks)
