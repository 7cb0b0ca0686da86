"""
Allocators for fresh element ids and fresh label sets.

Both are the only stateful pieces of the amalgamation layer. A run owns one
of each; ``copy`` hands a step its own allocator so earlier states are never
mutated.
"""

from itertools import combinations
from typing import AbstractSet, FrozenSet, Iterable, Iterator, Set

from amalgamation.errors import LabelUniverseExhausted
from models.structure import Structure
from models.types import ElementId, LabelSet


class IdAllocator:
    """Monotone counter of fresh element ids, never reused.

    Args:
        start (int): First id handed out. Defaults to 0.
    """

    def __init__(self, start: int = 0) -> None:
        self._next = start

    @classmethod
    def above(cls, structures: Iterable[Structure]) -> "IdAllocator":
        """Allocator starting right above every id used by the given structures."""
        top = max((s.max_id() for s in structures), default=-1)
        return cls(top + 1)

    @property
    def next_id(self) -> int:
        return self._next

    def fresh(self) -> ElementId:
        value = self._next
        self._next += 1
        return value

    def reserve_above(self, used: int) -> None:
        """Make sure ids up to ``used`` are never handed out."""
        self._next = max(self._next, used + 1)

    def copy(self) -> "IdAllocator":
        return IdAllocator(self._next)


def label_sets(universe: int) -> Iterator[LabelSet]:
    """All subsets of {0, ..., L-1} ordered by size, then lexicographically."""
    for size in range(universe + 1):
        for combo in combinations(range(universe), size):
            yield frozenset(combo)


class LabelAllocator:
    """Hands out the least unused label set in the (size, lex) order.

    Args:
        universe (int): Label universe size L.
        used (Iterable[LabelSet], optional): Label sets already taken.
    """

    def __init__(self, universe: int, used: Iterable[AbstractSet[int]] = ()) -> None:
        self.universe = universe
        self._used: Set[LabelSet] = {frozenset(u) for u in used}

    def mark_used(self, labels: AbstractSet[int]) -> None:
        self._used.add(frozenset(labels))

    def is_used(self, labels: AbstractSet[int]) -> bool:
        return frozenset(labels) in self._used

    def allocate(
        self,
        required: AbstractSet[int] = frozenset(),
        forbidden: AbstractSet[int] = frozenset(),
    ) -> LabelSet:
        """
        Take the least unused label set containing ``required`` and avoiding ``forbidden``.

        Raises:
            LabelUniverseExhausted: If every admissible set is taken.
        """
        required = frozenset(required)
        forbidden = frozenset(forbidden)
        for candidate in label_sets(self.universe):
            if candidate in self._used or not required <= candidate or candidate & forbidden:
                continue
            self._used.add(candidate)
            return candidate
        needed = max([self.universe] + [i + 1 for i in required | forbidden]) + 1
        raise LabelUniverseExhausted(
            f"no unused label set in L={self.universe} contains {sorted(required)} "
            f"and avoids {sorted(forbidden)}",
            needed,
        )

    @property
    def used(self) -> FrozenSet[LabelSet]:
        return frozenset(self._used)

    def copy(self) -> "LabelAllocator":
        return LabelAllocator(self.universe, self._used)
