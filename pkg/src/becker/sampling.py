"""
Finite generic labelled samples.

A label pattern (T, F) asks for an element carrying every label in T and
none in F. The sample realizes every small isomorphism type of the family
once for every assignment of patterns to its elements, by gluing labelled
copies of the types together over the empty structure.
"""

import logging
from itertools import combinations, islice, product
from typing import Iterator, List, Optional, Tuple

from amalgamation.allocators import IdAllocator, LabelAllocator
from amalgamation.strategy import AmalgamationStrategy, extension_universe
from models.cube import CubeDiagram, CubeShape
from models.structure import Embedding, LabeledStructure
from models.types import LabelSet

logger = logging.getLogger(__name__)

Pattern = Tuple[LabelSet, LabelSet]


def label_patterns(universe: int) -> Iterator[Pattern]:
    """
    Yield the patterns (T, F) over {0, ..., L-1} with T, F disjoint and not both empty.

    Order: by |T| + |F|, then by the largest index used, then patterns
    with fewer forbidden labels first, then lexicographically by T and F.
    """
    for size in range(1, universe + 1):
        for top in range(size - 1, universe):
            batch = []
            for rest in combinations(range(top), size - 1):
                used = rest + (top,)
                for mask in range(1 << size):
                    forbidden = tuple(x for i, x in enumerate(used) if mask >> i & 1)
                    required = tuple(x for x in used if x not in forbidden)
                    batch.append((len(forbidden), required, forbidden))
            for _, required, forbidden in sorted(batch):
                yield frozenset(required), frozenset(forbidden)


def first_patterns(universe: int, count: int) -> List[Pattern]:
    return list(islice(label_patterns(universe), count))


def _glue(strategy: AmalgamationStrategy, left: LabeledStructure, right: LabeledStructure, ids: IdAllocator):
    empty = strategy.empty(left.universe)
    p = CubeDiagram(
        2,
        CubeShape.BOUNDARY,
        {0: empty, 1: left, 2: right},
        {
            (0, 0): Embedding.identity(empty),
            (1, 1): Embedding.identity(left),
            (2, 2): Embedding.identity(right),
            (0, 1): Embedding(empty, left, {}),
            (0, 2): Embedding(empty, right, {}),
        },
    )
    return strategy.amalgamate(p, ids, check=False)[3]


def generic_labeled_sample(
    strategy: AmalgamationStrategy,
    size_cap: int,
    label_cap: int,
    pattern_cap: int,
    seed: int = 0,
    rel_cap: int = 1,
    type_cap: int = 4,
    exhaustive_limit: int = 4096,
    patterns: Optional[List[Pattern]] = None,
) -> LabeledStructure:
    """
    Build a labelled structure realizing every type of size <= s under every pattern choice.

    Args:
        strategy (AmalgamationStrategy): The family; it needs disjoint 2-amalgamation.
        size_cap (int): Largest type size s.
        label_cap (int): Label universe L.
        pattern_cap (int): Number of patterns used, taken in pattern order.
        seed, rel_cap, type_cap, exhaustive_limit: Parameters of the type enumeration.
        patterns (list, optional): Explicit patterns instead of the first ``pattern_cap``.

    Returns:
        LabeledStructure: Satisfies A1 by construction.

    Raises:
        AmalgamationRefused: If the strategy has no disjoint 2-amalgamation.
        LabelUniverseExhausted: If L is too small; the message names a sufficient L.
    """
    strategy.check_range(2, "a generic sample")
    if label_cap < 1:
        raise ValueError("a generic sample needs a label universe of at least one label")
    patterns = patterns if patterns is not None else first_patterns(label_cap, pattern_cap)
    universe = extension_universe(strategy, size_cap, rel_cap, type_cap, seed, exhaustive_limit)
    labels = LabelAllocator(label_cap)
    ids = IdAllocator()
    sample = strategy.empty(label_cap)
    copies = 0
    for a in universe.types:
        if not len(a):
            continue
        for choice in product(patterns, repeat=len(a)):
            id_map = {x: ids.fresh() for x in a.elements}
            assigned = {id_map[x]: labels.allocate(t, f) for x, (t, f) in zip(a.elements, choice)}
            copy = LabeledStructure(a.relabel(id_map), assigned, label_cap)
            sample = _glue(strategy, sample, copy, ids)
            copies += 1
    logger.info(
        "generic sample: %d types, %d patterns, %d copies, %d elements",
        len(universe.types) - 1, len(patterns), copies, len(sample),
    )
    return sample
