"""Structured pass/fail records with per-identity residuals.

A check passes when its residual is literally zero on the exact backend, or
strictly below the configured tolerance on the approximate one.  Reports
serialize deterministically: checks are ordered by name and context, exact
residuals render as ``"exact-zero"`` or a rational string, floats as JSON
numbers.  Timings are tracked but excluded from serialized output unless
asked for, so identical runs produce identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .scalars import Scalar


def residual_value(residual: Scalar | None, exact: bool):
    """JSON form of a residual."""
    if residual is None:
        return None
    if exact:
        return "exact-zero" if residual == 0 else str(Fraction(residual))
    return float(residual)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    residual: Scalar | None
    exact: bool
    context: Mapping[str, str]
    elapsed: float = 0.0

    def sort_key(self):
        ctx = self.context
        return (self.name, ctx.get("q", ""), ctx.get("r", ""), tuple(sorted(ctx.items())))

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {"name": self.name, "pass": self.passed}
        out.update(self.context)
        out["residual"] = residual_value(self.residual, self.exact)
        if include_timing:
            out["elapsed"] = self.elapsed
        return out


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(
        self,
        name: str,
        residual: Scalar | None,
        exact: bool,
        tol: float,
        context: Mapping[str, str],
        elapsed: float = 0.0,
        passed: bool | None = None,
    ) -> CheckResult:
        """Record a residual; pass/fail is derived from it unless overridden."""
        if passed is None:
            if residual is None:
                passed = True
            elif exact:
                passed = residual == 0
            else:
                passed = residual < tol
        check = CheckResult(name, passed, residual, exact, dict(context), elapsed)
        self.checks.append(check)
        return check

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.checks.extend(other.checks)
        return self

    def max_residual(self):
        values = [c.residual for c in self.checks if c.residual is not None]
        return max(values, default=None)

    def sorted_checks(self) -> list[CheckResult]:
        return sorted(self.checks, key=CheckResult.sort_key)

    def to_dict(self, include_timing: bool = False) -> dict:
        return {
            "pass": self.passed,
            "checks": [c.to_dict(include_timing) for c in self.sorted_checks()],
        }

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True, indent=2) + "\n"
