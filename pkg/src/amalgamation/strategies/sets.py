"""
Pure sets, encoded with arity 1: every element a has the row R_0(a), s_0(a) = a.

Sets amalgamate freely for every k; the amalgam is the colimit itself.
"""

from typing import List, Sequence

from amalgamation.strategy import AmalgamationStrategy
from models.reports import ReportBuilder, ValidationReport
from models.structure import LabeledStructure, Structure, TupleEntry
from models.types import ElementId, NTuple
from structures.validation import structural_errors, validate_labels

FAMILY = "sets"


def set_entry(t: NTuple) -> TupleEntry:
    return TupleEntry(0, (t[0],))


class SetsStrategy(AmalgamationStrategy):
    """The class of all finite sets."""

    family = FAMILY

    def validate(self, s: Structure) -> ValidationReport:
        report = ReportBuilder()
        if s.arity != 1:
            report.structural("arity", f"sets are encoded with arity 1, got {s.arity}")
            return report.build()
        errors = structural_errors(s)
        if errors:
            return ValidationReport((), tuple(errors))
        for t, entry in sorted(s.table.items()):
            if entry != set_entry(t):
                report.violation("set-row", f"element {t[0]} has row {entry}, expected the identity", t[0])
        result = report.build()
        if isinstance(s, LabeledStructure):
            result = result.merge(validate_labels(s))
        return result

    def fill_entry(self, t: NTuple, top_elements: Sequence[ElementId]) -> TupleEntry:
        return set_entry(t)

    def candidate_rows(self, t: NTuple, elements: Sequence[ElementId], rel_cap: int) -> List[TupleEntry]:
        return [set_entry(t)]


def create_strategy(n: int = 1) -> AmalgamationStrategy:
    return SetsStrategy(1)
