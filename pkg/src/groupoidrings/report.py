"""Shared verdicts, violation records and validation reports."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
NOT_CERTIFIED = "not-certified"
UNDECIDED = "undecided"

VERDICTS = (PASS, FAIL, NOT_CERTIFIED, UNDECIDED)


class StructureError(ValueError):
    """Malformed input data: dangling index, shape mismatch, bad table.

    Distinct from an axiom violation, which is reported, not raised.
    """


@dataclass
class Violation:
    check: str
    witness: tuple
    message: str

    def as_dict(self) -> dict:
        return {
            "check": self.check,
            "witness": list(self.witness),
            "message": self.message,
        }


@dataclass
class ValidationReport:
    """Accumulates axiom violations; empty means the axioms hold."""

    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, check: str, witness: tuple, message: str) -> None:
        self.violations.append(Violation(check, witness, message))

    def extend(self, other: "ValidationReport") -> None:
        self.violations.extend(other.violations)

    def checks_failed(self) -> list[str]:
        seen: list[str] = []
        for v in self.violations:
            if v.check not in seen:
                seen.append(v.check)
        return seen

    def raise_if_failed(self, context: str) -> None:
        if not self.ok:
            first = self.violations[0]
            raise ValueError(
                f"{context}: {len(self.violations)} violation(s); "
                f"first: {first.check} at {first.witness}: {first.message}"
            )

    def as_dict(self) -> dict:
        return {"ok": self.ok, "violations": [v.as_dict() for v in self.violations]}
