"""Structured pass/fail records shared by the verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

Status = Literal["pass", "fail", "vacuous"]


@dataclass(frozen=True)
class LemmaReport:
    """One check at one (alpha, prime); ``details`` carries enough to replay a failure."""

    tag: str
    status: Status
    alpha: str = ""
    prime: str = ""
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def as_dict(self) -> dict:
        return {
            "tag": self.tag,
            "status": self.status,
            "alpha": self.alpha,
            "prime": self.prime,
            "details": dict(self.details),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LemmaReport":
        return cls(d["tag"], d["status"], d.get("alpha", ""), d.get("prime", ""), dict(d.get("details", {})))


def verdict(ok: bool) -> Status:
    return "pass" if ok else "fail"
