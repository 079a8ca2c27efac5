"""Generic verification framework shared by every suite."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any


@dataclass
class VerificationCheck:
    """Result of a single verification check.

    Attributes:
        name: Dotted check name, ``<module>.<invariant>[params]``.
        expected: What was expected.
        actual: What was found.
        passed: Whether the check passed. Skipped checks should have passed=True.
        details: Additional details about the check result.
        skipped: If True, this check was skipped (e.g., parameters out of range
            for this suite). Skipped checks don't count as failures.
        residual: Measured deviation, when the check is numeric.
        tolerance: Largest residual that passes.
    """

    name: str
    expected: str
    actual: str
    passed: bool
    details: str = ""
    skipped: bool = False
    residual: float | None = None
    tolerance: float | None = None


@dataclass
class VerificationReport:
    """All checks of one suite run, with the parameters that produced them."""

    suite: str
    parameters: dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    version: str = ""
    checks: list[VerificationCheck] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        """Return True if all checks passed (skipped checks count as passed)."""
        return all(c.passed for c in self.checks)

    @property
    def passed_count(self) -> int:
        """Count of passed checks (excluding skipped)."""
        return sum(1 for c in self.checks if c.passed and not c.skipped)

    @property
    def failed_count(self) -> int:
        return sum(1 for c in self.checks if not c.passed)

    @property
    def skipped_count(self) -> int:
        return sum(1 for c in self.checks if c.skipped)

    @property
    def failed(self) -> list[VerificationCheck]:
        return [c for c in self.checks if not c.passed]

    def add(self, check: VerificationCheck) -> None:
        self.checks.append(check)

    def extend(self, other: VerificationReport) -> None:
        """Append another report's checks (used by ``verify all``)."""
        self.checks.extend(other.checks)

    def summary(self) -> str:
        """Return a formatted summary of verification results."""
        lines = [
            f"Verification Results for suite: {self.suite} (seed {self.seed})",
            "=" * 60,
        ]
        for check in self.checks:
            if check.skipped:
                status = "⏭️ SKIP"
            elif check.passed:
                status = "✅ PASS"
            else:
                status = "❌ FAIL"
            lines.append(f"{status} {check.name}")
            lines.append(f"       Expected: {check.expected}")
            lines.append(f"       Actual:   {check.actual}")
            if check.details:
                lines.append(f"       Details:  {check.details}")

        lines.append("=" * 60)
        if self.all_passed:
            if self.skipped_count > 0:
                lines.append(f"✅ All checks passed! ({self.skipped_count} skipped)")
            else:
                lines.append("✅ All checks passed!")
        else:
            names = ", ".join(c.name for c in self.failed[:5])
            lines.append(f"❌ {self.failed_count}/{len(self.checks)} checks failed: {names}")
        return "\n".join(lines)

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "parameters": self.parameters,
            "seed": self.seed,
            "version": self.version,
            "all_passed": self.all_passed,
            "passed": self.passed_count,
            "failed": self.failed_count,
            "skipped": self.skipped_count,
            "checks": [_json_safe(asdict(c)) for c in self.checks],
        }

    def to_json(self) -> str:
        """Sorted keys, no timestamps: equal inputs give byte-identical output."""
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)


def _json_safe(record: dict[str, Any]) -> dict[str, Any]:
    """Non-finite floats become strings so the report stays strict JSON."""
    return {
        key: (repr(value) if isinstance(value, float) and not math.isfinite(value) else value)
        for key, value in record.items()
    }


def check_residual(
    name: str,
    residual: float,
    tolerance: float,
    details: str = "",
) -> VerificationCheck:
    """
    Numeric check: passes when ``residual <= tolerance``.

    A NaN residual always fails.

    Args:
        name: Check name for reporting.
        residual: Measured deviation (non-negative).
        tolerance: Largest passing deviation.
        details: Free-form context.

    Returns:
        VerificationCheck with pass/fail status.
    """
    residual = float(residual)
    return VerificationCheck(
        name=name,
        expected=f"residual <= {tolerance:.1e}",
        actual=f"{residual:.3e}",
        passed=math.isfinite(residual) and residual <= tolerance,
        details=details,
        residual=residual,
        tolerance=tolerance,
    )


def check_bound(
    name: str,
    value: float,
    low: float = -math.inf,
    high: float = math.inf,
    details: str = "",
) -> VerificationCheck:
    """Passes when ``low <= value <= high``; the residual is the overshoot."""
    value = float(value)
    overshoot = max(low - value, value - high, 0.0) if math.isfinite(value) else math.inf
    return VerificationCheck(
        name=name,
        expected=f"in [{low:.15g}, {high:.15g}]",
        actual=f"{value:.15g}",
        passed=overshoot == 0.0,
        details=details,
        residual=overshoot,
        tolerance=0.0,
    )


def check_exact(
    name: str, actual: object, expected: object, details: str = ""
) -> VerificationCheck:
    """Exact equality, for integers, periods and other discrete results."""
    return VerificationCheck(
        name=name,
        expected=str(expected),
        actual=str(actual),
        passed=actual == expected,
        details=details,
    )


def check_flag(
    name: str, ok: bool, expected: str, actual: str, details: str = ""
) -> VerificationCheck:
    """Boolean property check with custom descriptions."""
    return VerificationCheck(
        name=name, expected=expected, actual=actual, passed=bool(ok), details=details
    )


def check_skipped(name: str, reason: str) -> VerificationCheck:
    """A check that does not apply to these parameters."""
    return VerificationCheck(
        name=name,
        expected="applicable",
        actual="skipped",
        passed=True,
        details=reason,
        skipped=True,
    )
