"""Check reports shared by the certification routines."""

from __future__ import annotations

from typing import NamedTuple


class CheckRecord(NamedTuple):
    """Outcome of one certification check."""

    name: str
    labels: tuple[str, ...]
    passed: bool


class CertReport:
    """Collection of check records; the verdict is their conjunction."""

    def __init__(self, checks: list[CheckRecord]):
        self.checks = tuple(checks)

    @property
    def verdict(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckRecord]:
        return [c for c in self.checks if not c.passed]

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "num_checks": len(self.checks),
            "checks": [
                {"name": c.name, "labels": list(c.labels), "pass": c.passed}
                for c in self.checks
            ],
        }

    def __repr__(self) -> str:
        state = "pass" if self.verdict else f"{len(self.failures())} failing"
        return f"CertReport({len(self.checks)} checks, {state})"
