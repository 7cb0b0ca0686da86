"""
Validators for the BKL_n axioms and for labelled structures.

Validators never raise on bad input: malformed structures come back as
structural errors, axiom failures as violations with a concrete witness.
"""

import logging
from itertools import product
from typing import List

from models.reports import ReportBuilder, ValidationReport
from models.structure import LabeledStructure, Structure
from structures.closure import IndependenceChecker

logger = logging.getLogger(__name__)


def structural_errors(s: Structure) -> List:
    """
    Check the well-formedness invariants of a structure.

    Checks that ids are sorted naturals without duplicates, the tuple table
    is total on elements^n with no foreign rows, and every recorded function
    value is an element.

    Args:
        s (Structure): The structure to inspect.

    Returns:
        list[Violation]: One entry per problem found, empty when well formed.
    """
    report = ReportBuilder()
    base = s.base
    if not isinstance(base.arity, int) or base.arity < 1:
        report.structural("arity", f"arity must be a positive integer, got {base.arity!r}")
        return report.structural_errors

    elements = base.elements
    if any(not isinstance(a, int) or a < 0 for a in elements):
        report.structural("element-id", "element ids must be natural numbers", *elements)
    elif list(elements) != sorted(set(elements)):
        report.structural("element-order", "element ids must be sorted without duplicates", *elements)

    members = set(elements)
    for t in product(elements, repeat=base.arity):
        if t not in base.table:
            report.structural("non-total", f"tuple {t} has no entry", t)
            break
    for t, entry in base.table.items():
        if len(t) != base.arity or not members.issuperset(t):
            report.structural("dangling-id", f"row {t} is not a tuple over the elements", t)
            continue
        stray = [v for v in entry.fn_values if v not in members]
        if stray:
            report.structural("dangling-id", f"row {t} has values {stray} outside the structure", t)
    return report.structural_errors


def validate_bkl(s: Structure) -> ValidationReport:
    """
    Validate the BKL_n axioms B1-B4.

    B1 and B2 are representational (one relation index per tuple, function
    values stored up to that index) and are re-checked row by row. B3 is
    searched exhaustively for a substructure-independent set of size n+1. B4
    holds for every finite structure.

    Args:
        s (Structure): The structure to validate (labels are ignored).

    Returns:
        ValidationReport: Empty iff ``s`` is a BKL_n structure.
    """
    report = ReportBuilder()
    errors = structural_errors(s)
    if errors:
        return ValidationReport((), tuple(errors))

    for t, entry in sorted(s.table.items()):
        if not isinstance(entry.rel_index, int) or entry.rel_index < 0:
            report.violation("B1", f"tuple {t} has no valid relation index", t)
        elif len(entry.fn_values) != entry.rel_index + 1:
            report.violation(
                "B2",
                f"tuple {t} stores {len(entry.fn_values)} values for relation index {entry.rel_index}",
                t,
            )
    if report.violations:
        return report.build()

    witness = IndependenceChecker(s).find_independent_set(s.arity + 1)
    if witness is not None:
        logger.debug("B3 fails with independent set %s", witness)
        report.violation(
            "B3", f"{set(witness)} is a substructure-independent set of size {s.arity + 1}", *witness
        )
    return report.build()


def validate_labels(s: LabeledStructure) -> ValidationReport:
    """
    Validate axiom A1: distinct elements carry distinct label sets.

    Args:
        s (LabeledStructure): The structure to validate.

    Returns:
        ValidationReport: Empty iff labels are in range and pairwise distinct.
    """
    report = ReportBuilder()
    for a in s.elements:
        out_of_range = sorted(i for i in s.label_of(a) if not 0 <= i < s.universe)
        if out_of_range:
            report.structural(
                "label-range", f"element {a} has labels {out_of_range} outside 0..{s.universe - 1}", a
            )
    if report.structural_errors:
        return report.build()

    seen = {}
    for a in s.elements:
        labels = s.label_of(a)
        if labels in seen:
            report.violation(
                "A1", f"elements {seen[labels]} and {a} both carry labels {sorted(labels)}", seen[labels], a
            )
            break
        seen[labels] = a
    return report.build()


def validate_structure(s: Structure) -> ValidationReport:
    """Run ``validate_bkl`` and, for labelled input, ``validate_labels``."""
    report = validate_bkl(s)
    if isinstance(s, LabeledStructure):
        report = report.merge(validate_labels(s))
    return report
