"""Structured result of one verification suite."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class CheckReport:
    """One suite's outcome.

    status is "pass" exactly when first_failure is None.  residual
    carries the canonical rendering of the first failing value, or a
    textual adjudication summary on suites that exist to document a
    source discrepancy.
    """

    suite: str
    range: str
    status: str
    first_failure: object | None
    residual: str | None
    elapsed_ms: float

    @classmethod
    def passed(cls, suite: str, range_: str, elapsed_ms: float,
               residual: str | None = None) -> CheckReport:
        return cls(suite, range_, "pass", None, residual, elapsed_ms)

    @classmethod
    def failed(cls, suite: str, range_: str, first_failure: object,
               residual: str, elapsed_ms: float) -> CheckReport:
        return cls(suite, range_, "fail", first_failure, residual, elapsed_ms)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "range": self.range,
            "status": self.status,
            "first_failure": self.first_failure,
            "residual": self.residual,
            "elapsed_ms": self.elapsed_ms,
        }
