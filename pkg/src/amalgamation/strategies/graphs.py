"""
Simple graphs, encoded with arity 2.

R_1(a, b) is an edge and R_0(a, b) a non-edge; every function value is the
first coordinate, so every subset is closed. Amalgams add no cross edges.
"""

from typing import List, Sequence

from amalgamation.strategy import AmalgamationStrategy
from models.reports import ReportBuilder, ValidationReport
from models.structure import LabeledStructure, Structure, TupleEntry
from models.types import ElementId, NTuple
from structures.validation import structural_errors, validate_labels

FAMILY = "graphs"

EDGE = 1
NON_EDGE = 0


def graph_entry(t: NTuple, edge: bool) -> TupleEntry:
    if edge:
        return TupleEntry(EDGE, (t[0], t[0]))
    return TupleEntry(NON_EDGE, (t[0],))


def edges(s: Structure) -> List[NTuple]:
    """Edges (a, b) with a < b."""
    return [t for t, e in sorted(s.table.items()) if e.rel_index == EDGE and t[0] < t[1]]


class GraphsStrategy(AmalgamationStrategy):
    """The class of finite simple graphs."""

    family = FAMILY

    def validate(self, s: Structure) -> ValidationReport:
        report = ReportBuilder()
        if s.arity != 2:
            report.structural("arity", f"graphs are encoded with arity 2, got {s.arity}")
            return report.build()
        errors = structural_errors(s)
        if errors:
            return ValidationReport((), tuple(errors))
        for t, entry in sorted(s.table.items()):
            if entry.rel_index not in (EDGE, NON_EDGE) or entry != graph_entry(t, entry.rel_index == EDGE):
                report.violation("graph-row", f"tuple {t} has row {entry}", t)
            elif t[0] == t[1] and entry.rel_index == EDGE:
                report.violation("irreflexive", f"loop at {t[0]}", t)
            elif s.table[(t[1], t[0])].rel_index != entry.rel_index:
                report.violation("symmetric", f"edge relation differs on {t} and its reverse", t)
        result = report.build()
        if isinstance(s, LabeledStructure):
            result = result.merge(validate_labels(s))
        return result

    def fill_entry(self, t: NTuple, top_elements: Sequence[ElementId]) -> TupleEntry:
        return graph_entry(t, False)

    def candidate_rows(self, t: NTuple, elements: Sequence[ElementId], rel_cap: int) -> List[TupleEntry]:
        if t[0] == t[1] or rel_cap < EDGE:
            return [graph_entry(t, False)]
        return [graph_entry(t, False), graph_entry(t, True)]


def create_strategy(n: int = 2) -> AmalgamationStrategy:
    return GraphsStrategy(2)
