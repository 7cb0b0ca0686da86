"""Validation reports shared by the structure, cube and strategy validators."""

from dataclasses import dataclass, field
from typing import Any, List, Tuple


@dataclass(frozen=True)
class Violation:
    """A single failed condition with the concrete witness that breaks it.

    Args:
        rule (str): Short rule name, e.g. ``"B3"``, ``"A1"``, ``"functoriality"``.
        message (str): Human readable description.
        witness (tuple): Elements, faces or face pairs exhibiting the failure.
    """

    rule: str
    message: str
    witness: Tuple[Any, ...] = ()

    def to_document(self) -> dict:
        return {"rule": self.rule, "message": self.message, "witness": _plain(self.witness)}


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a validator.

    Axiom-level failures go to ``violations``; malformed input (non-total
    tables, dangling ids, missing faces) goes to ``structural_errors``.
    """

    violations: Tuple[Violation, ...] = ()
    structural_errors: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations and not self.structural_errors

    def __bool__(self) -> bool:
        return self.ok

    def merge(self, other: "ValidationReport") -> "ValidationReport":
        return ValidationReport(
            self.violations + other.violations,
            self.structural_errors + other.structural_errors,
        )

    def rules(self) -> List[str]:
        return [v.rule for v in self.violations + self.structural_errors]

    def to_document(self) -> dict:
        return {
            "valid": self.ok,
            "violations": [v.to_document() for v in self.violations],
            "structural_errors": [v.to_document() for v in self.structural_errors],
        }


@dataclass
class ReportBuilder:
    """Mutable accumulator used while a validator runs."""

    violations: List[Violation] = field(default_factory=list)
    structural_errors: List[Violation] = field(default_factory=list)

    def violation(self, rule: str, message: str, *witness: Any) -> None:
        self.violations.append(Violation(rule, message, tuple(witness)))

    def structural(self, rule: str, message: str, *witness: Any) -> None:
        self.structural_errors.append(Violation(rule, message, tuple(witness)))

    def build(self) -> ValidationReport:
        return ValidationReport(tuple(self.violations), tuple(self.structural_errors))


def _plain(value: Any) -> Any:
    """Convert nested tuples / frozensets into JSON-friendly sorted lists."""
    if isinstance(value, (tuple, list)):
        return [_plain(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(_plain(v) for v in value)
    return value
