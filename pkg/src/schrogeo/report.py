"""Check results and report containers shared by the suites and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

__all__ = ["CheckResult", "VerificationReport"]

_STATUSES = ("PASS", "FAIL", "ERROR")


def _jsonable(value):
    # numpy scalars and containers sneak into extras; normalize them
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, bool):
        return value
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        return value.item()
    return value


@dataclass
class CheckResult:
    """Outcome of one named check.

    ``residual`` is the maximized defect the check measured and ``tolerance``
    the threshold it was held to.  ``claim`` states in words what property was
    tested.  ``extra`` carries auxiliary numbers worth auditing (dimensions,
    per-sample data, flags); it must stay JSON-serializable.
    """

    name: str
    status: str
    residual: float | None = None
    tolerance: float | None = None
    claim: str = ""
    config: dict = field(default_factory=dict)
    samples: int | None = None
    seed: int | None = None
    extra: dict = field(default_factory=dict)
    error: str | None = None

    def __post_init__(self):
        if self.status not in _STATUSES:
            raise ValueError(f"status must be one of {_STATUSES}, got {self.status!r}")

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "status": self.status, "claim": self.claim}
        if self.residual is not None:
            out["residual"] = float(self.residual)
        if self.tolerance is not None:
            out["tolerance"] = float(self.tolerance)
        if self.config:
            out["config"] = _jsonable(self.config)
        if self.samples is not None:
            out["samples"] = int(self.samples)
        if self.seed is not None:
            out["seed"] = int(self.seed)
        if self.extra:
            out["extra"] = _jsonable(self.extra)
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, check: CheckResult) -> None:
        self.checks.append(check)

    def extend(self, other: "VerificationReport") -> None:
        self.checks.extend(other.checks)

    def all_passed(self) -> bool:
        return all(c.status == "PASS" for c in self.checks)

    def counts(self) -> dict[str, int]:
        out = {s: 0 for s in _STATUSES}
        for c in self.checks:
            out[c.status] += 1
        return out

    def named(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)
