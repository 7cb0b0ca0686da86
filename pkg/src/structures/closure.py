"""
Generated substructures and substructure independence.

The closure of a seed set is computed semi-naively: each round only visits
tuples that contain at least one element added in the previous round, and the
loop stops as soon as nothing new appears or every element is reached.
"""

from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, Optional, Set, Tuple

from models.structure import AssignmentError, Structure
from models.types import ElementId


def _closure(s: Structure, seeds: Iterable[ElementId], target: Optional[ElementId] = None) -> Set[ElementId]:
    members = set(seeds)
    frontier = set(members)
    total = len(s)
    table = s.table
    while frontier and len(members) < total:
        added = set()
        ordered = sorted(members)
        for t in product(ordered, repeat=s.arity):
            if frontier.isdisjoint(t):
                continue
            for v in table[t].fn_values:
                if v not in members:
                    added.add(v)
        members |= added
        if target is not None and target in added:
            break
        frontier = added
    return members


def _check_seeds(s: Structure, seeds: Iterable[ElementId]) -> FrozenSet[ElementId]:
    seeds = frozenset(seeds)
    stray = [a for a in seeds if a not in s]
    if stray:
        raise AssignmentError(f"Seeds {sorted(stray)} are not elements of the structure")
    return seeds


def generated_substructure(s: Structure, seeds: Iterable[ElementId]) -> Tuple[ElementId, ...]:
    """
    Compute the substructure generated by a set of elements.

    Args:
        s (Structure): The ambient structure.
        seeds (Iterable[int]): Element ids of ``s``.

    Returns:
        tuple[int, ...]: The least superset of ``seeds`` closed under every s_i,
            sorted.

    Raises:
        AssignmentError: If a seed is not an element of ``s``.
    """
    return tuple(sorted(_closure(s, _check_seeds(s, seeds))))


def is_closed(s: Structure, element_set: Iterable[ElementId]) -> bool:
    """True iff the given subset is already closed under the functions."""
    members = frozenset(element_set)
    table = s.table
    return all(
        members.issuperset(table[t].fn_values)
        for t in product(sorted(members), repeat=s.arity)
    )


def induced_substructure(s: Structure, element_set: Iterable[ElementId]) -> Structure:
    """Restrict ``s`` to a closed subset (raises StructureError when it is not closed)."""
    return s.restrict(_check_seeds(s, element_set))


def closed_subsets(s: Structure, max_size: int) -> Iterable[Tuple[ElementId, ...]]:
    """
    Yield the closed subsets of ``s`` with at most ``max_size`` elements.

    Subsets come out by size, then lexicographically; the empty set is always
    closed since there are no constants.
    """
    for size in range(0, min(max_size, len(s)) + 1):
        for subset in combinations(s.elements, size):
            if is_closed(s, subset):
                yield subset


class IndependenceChecker:
    """Answers substructure-independence queries over one structure, caching closures."""

    def __init__(self, s: Structure) -> None:
        self._s = s
        self._cache: Dict[FrozenSet[ElementId], FrozenSet[ElementId]] = {}

    def closure(self, seeds: FrozenSet[ElementId]) -> FrozenSet[ElementId]:
        cached = self._cache.get(seeds)
        if cached is None:
            cached = frozenset(_closure(self._s, seeds))
            self._cache[seeds] = cached
        return cached

    def is_independent(self, candidate: Iterable[ElementId]) -> bool:
        candidate = frozenset(candidate)
        return all(b not in self.closure(candidate - {b}) for b in sorted(candidate))

    def find_independent_set(self, size: int) -> Optional[Tuple[ElementId, ...]]:
        """Return the lexicographically first independent set of the given size, if any."""
        for candidate in combinations(self._s.elements, size):
            if self.is_independent(candidate):
                return candidate
        return None


def independence_check(s: Structure, candidate: Iterable[ElementId]) -> bool:
    """
    Decide whether a set of elements is substructure-independent.

    A set B is independent when no b in B lies in the substructure generated
    by B without b. The empty set is independent.

    Args:
        s (Structure): The ambient structure.
        candidate (Iterable[int]): Element ids of ``s``.

    Returns:
        bool: True iff the candidate is substructure-independent.
    """
    candidate = _check_seeds(s, candidate)
    return all(b not in _closure(s, candidate - {b}, target=b) for b in sorted(candidate))
