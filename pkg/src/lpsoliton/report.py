"""Structured pass/fail records shared by every checker.

A check carries a ``scope``:

* ``internal``: a first-principles fact; a failure means the input (or the
  code) is wrong and drives a nonzero exit status.
* ``published``: a comparison against a value or formula as printed in the
  source literature. Mismatches are data, never fatal.
* ``info``: a descriptive property of the input (e.g. "R.S = 0 holds").

Witness indices are 1-based frame labels, so ``(1, 4)`` means ``(e1, e4)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Optional

from .exact import Tensor

PASS = "pass"
FAIL = "fail"
CONDITIONAL = "conditional"
SKIPPED = "skipped"
STATUSES = (PASS, FAIL, CONDITIONAL, SKIPPED)

INTERNAL = "internal"
PUBLISHED = "published"
INFO = "info"


@dataclass(frozen=True)
class Witness:
    index: tuple[int, ...]
    expected: Optional[str] = None
    actual: Optional[str] = None

    def to_dict(self) -> dict[str, Any]:
        return {"index": list(self.index), "expected": self.expected, "actual": self.actual}


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    witness: Optional[Witness] = None
    scope: str = INTERNAL
    note: str = ""

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == FAIL and self.witness is None:
            raise ValueError(f"failed check {self.name!r} needs a witness")

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"name": self.name, "status": self.status, "scope": self.scope}
        d["witness"] = self.witness.to_dict() if self.witness else None
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class Report:
    subject: str
    checks: list[Check] = field(default_factory=list)
    parameters: Optional[dict[str, Any]] = None
    data: dict[str, Any] = field(default_factory=dict)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, checks: Iterable[Check]) -> None:
        self.checks.extend(checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self) -> list[str]:
        return [c.name for c in self.checks]

    @property
    def passed(self) -> bool:
        """True when no internal-scope check failed."""
        return all(c.ok for c in self.checks if c.scope == INTERNAL)

    @property
    def all_passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self, scope: Optional[str] = None) -> list[Check]:
        return [c for c in self.checks if not c.ok and (scope is None or c.scope == scope)]

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"subject": self.subject}
        d["parameters"] = self.parameters
        d["passed"] = self.passed
        d["checks"] = [c.to_dict() for c in sorted(self.checks, key=lambda c: c.name)]
        if self.data:
            d["data"] = self.data
        return d


def label(idx: Iterable[int]) -> tuple[int, ...]:
    return tuple(i + 1 for i in idx)


def compare(name: str, expected: Tensor, actual: Tensor, *, scope: str = INTERNAL,
            note: str = "", mismatch_status: str = FAIL) -> Check:
    """Componentwise exact comparison; the first differing index is the witness."""
    if expected.variance != actual.variance or expected.dim != actual.dim:
        return Check(name, FAIL, Witness((), str(expected.variance), str(actual.variance)),
                     scope=scope, note="shape mismatch")
    for (idx, e), a in zip(expected.items(), actual.data):
        if e != a:
            return Check(name, mismatch_status, Witness(label(idx), str(e), str(a)),
                         scope=scope, note=note)
    return Check(name, PASS, scope=scope, note=note)


def compare_scalar(name: str, expected: Fraction, actual: Fraction, *, scope: str = INTERNAL,
                   note: str = "") -> Check:
    if expected == actual:
        return Check(name, PASS, scope=scope, note=note)
    return Check(name, FAIL, Witness((), str(expected), str(actual)), scope=scope, note=note)


def tensor_json(t: Tensor, *, nonzero_only: bool = True) -> list[dict[str, Any]]:
    items = t.nonzero() if nonzero_only else list(t.items())
    return [{"index": list(label(idx)), "value": str(v)} for idx, v in items]
