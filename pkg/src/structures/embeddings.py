"""
Embedding checks and backtracking embedding search.

Source elements are assigned in increasing id order and candidates are tried
in increasing id order, so results come out in lexicographic order of the
map. A tuple's relation index is checked as soon as all of its coordinates
are assigned; its function values once every value is assigned as well.
"""

import logging
from itertools import product
from typing import Dict, Iterator, List, Mapping, Optional

from models.structure import (
    Embedding,
    Structure,
    StructureMismatchError,
    same_signature,
)
from models.types import ElementId, IdMap

logger = logging.getLogger(__name__)


def is_embedding(source: Structure, target: Structure, mapping: Mapping[ElementId, ElementId]) -> bool:
    """
    Check directly whether a map is an embedding.

    Args:
        source (Structure): Domain.
        target (Structure): Codomain.
        mapping (Mapping[int, int]): Candidate element map.

    Returns:
        bool: True iff the map is total on the source, injective, lands in the
            target, preserves labels and preserves every relation index and
            function value.
    """
    if set(mapping) != set(source.elements):
        return False
    images = [mapping[a] for a in source.elements]
    if len(set(images)) != len(images) or any(b not in target for b in images):
        return False
    if source.is_labeled and target.is_labeled:
        if any(source.label_of(a) != target.label_of(mapping[a]) for a in source.elements):
            return False
    for t in source.tuples():
        entry = source.entry(t)
        image_entry = target.entry(tuple(mapping[a] for a in t))
        if image_entry.rel_index != entry.rel_index:
            return False
        if image_entry.fn_values != tuple(mapping[v] for v in entry.fn_values):
            return False
    return True


class _Search:
    """State of one backtracking search from ``a`` into ``b``."""

    def __init__(self, a: Structure, b: Structure, fixed: Optional[Mapping[ElementId, ElementId]]):
        self.a = a
        self.b = b
        self.order = list(a.elements)
        self.fixed = dict(fixed or {})
        position = {x: i for i, x in enumerate(self.order)}
        size = len(self.order)
        self.rel_checks: List[List] = [[] for _ in range(size)]
        self.fn_checks: List[List] = [[] for _ in range(size)]
        for t in a.tuples():
            entry = a.entry(t)
            coord_level = max(position[x] for x in t)
            full_level = max([coord_level] + [position[v] for v in entry.fn_values])
            self.rel_checks[coord_level].append((t, entry.rel_index))
            self.fn_checks[full_level].append((t, entry.fn_values))
        self.labeled = a.is_labeled

    def candidates(self, x: ElementId, used: set) -> Iterator[ElementId]:
        if x in self.fixed:
            pool = [self.fixed[x]] if self.fixed[x] in self.b else []
        else:
            pool = self.b.elements
        for y in pool:
            if y in used:
                continue
            if self.labeled and self.a.label_of(x) != self.b.label_of(y):
                continue
            yield y

    def consistent(self, level: int, m: IdMap) -> bool:
        b = self.b
        for t, rel in self.rel_checks[level]:
            if b.entry(tuple(m[x] for x in t)).rel_index != rel:
                return False
        for t, values in self.fn_checks[level]:
            if b.entry(tuple(m[x] for x in t)).fn_values != tuple(m[v] for v in values):
                return False
        return True

    def run(self, limit: Optional[int]) -> Iterator[IdMap]:
        m: Dict[ElementId, ElementId] = {}
        used: set = set()
        found = 0

        def extend(level: int) -> Iterator[IdMap]:
            if level == len(self.order):
                yield dict(m)
                return
            x = self.order[level]
            for y in self.candidates(x, used):
                m[x] = y
                used.add(y)
                if self.consistent(level, m):
                    yield from extend(level + 1)
                used.discard(y)
                del m[x]

        for result in extend(0):
            yield result
            found += 1
            if limit is not None and found >= limit:
                return


def find_embeddings(
    a: Structure,
    b: Structure,
    limit: Optional[int] = None,
    fixed: Optional[Mapping[ElementId, ElementId]] = None,
) -> List[Embedding]:
    """
    Find embeddings of ``a`` into ``b`` by backtracking.

    Args:
        a (Structure): Source structure.
        b (Structure): Target structure.
        limit (int, optional): Stop after this many embeddings. Defaults to None
            (all of them).
        fixed (Mapping[int, int], optional): Source elements whose image is
            prescribed, used to extend a partial realization.

    Returns:
        list[Embedding]: Embeddings in lexicographic order of the map on the
            sorted source elements.

    Raises:
        StructureMismatchError: If the arities (or label universes) differ.
    """
    problem = same_signature(a, b)
    if problem is not None:
        raise StructureMismatchError(problem)
    if len(a) > len(b) or limit == 0:
        return []
    return [Embedding(a, b, m) for m in _Search(a, b, fixed).run(limit)]


def embeds(a: Structure, b: Structure) -> Optional[Embedding]:
    """First embedding of ``a`` into ``b``, or None."""
    found = find_embeddings(a, b, limit=1)
    return found[0] if found else None


def is_isomorphic(a: Structure, b: Structure) -> Optional[Embedding]:
    """
    Return the first bijective embedding of ``a`` onto ``b``, if any.

    Raises:
        StructureMismatchError: If the arities (or label universes) differ.
    """
    problem = same_signature(a, b)
    if problem is not None:
        raise StructureMismatchError(problem)
    if len(a) != len(b):
        return None
    return embeds(a, b)


def count_embeddings(a: Structure, b: Structure) -> int:
    """Number of embeddings of ``a`` into ``b``."""
    return len(find_embeddings(a, b))


def brute_force_embeddings(a: Structure, b: Structure) -> List[IdMap]:
    """All embeddings by exhaustive enumeration of maps; an oracle for small inputs."""
    result = []
    for images in product(b.elements, repeat=len(a)):
        m = dict(zip(a.elements, images))
        if is_embedding(a, b, m):
            result.append(m)
    return result
