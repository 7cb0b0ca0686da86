"""
BKL_n structures: n-ary functions and relations under axioms B1-B4.

Disjoint k-amalgamation works for 1 <= k <= n. Uncovered tuples of an
amalgam take the largest relation index with the whole amalgam as function
values, so any such tuple generates everything.
"""

from itertools import product
from typing import List, Optional, Sequence

from amalgamation.completion import bkl_fill_entry, complete_bkl
from amalgamation.strategy import AmalgamationStrategy
from models.reports import ValidationReport
from models.structure import Structure, TupleEntry
from models.types import ElementId, NTuple
from structures.validation import validate_structure

FAMILY = "bkl"


class BKLStrategy(AmalgamationStrategy):
    """The class of finite BKL_n structures."""

    family = FAMILY

    @property
    def name(self) -> str:
        return f"bkl({self.arity})"

    @property
    def max_k(self) -> Optional[int]:
        return self.arity

    def validate(self, s: Structure) -> ValidationReport:
        return validate_structure(s)

    def fill_entry(self, t: NTuple, top_elements: Sequence[ElementId]) -> TupleEntry:
        return bkl_fill_entry(t, top_elements)

    def candidate_rows(self, t: NTuple, elements: Sequence[ElementId], rel_cap: int) -> List[TupleEntry]:
        return [
            TupleEntry(j, values)
            for j in range(rel_cap + 1)
            for values in product(elements, repeat=j + 1)
        ]

    def amalgamate(self, p, ids=None, check=True):
        return complete_bkl(p, self.arity, ids, check)


def create_strategy(n: int) -> AmalgamationStrategy:
    if n < 1:
        raise ValueError(f"BKL_n needs n >= 1, got n={n}")
    return BKLStrategy(n)
