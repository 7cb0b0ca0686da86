"""
The amalgamation strategy interface.

A strategy knows one family of finite structures: how to validate its
members, how to fill the tuples a colimit leaves uncovered, and which rows a
one-point extension may give to its new tuples. Concrete strategies live as
plug-in modules in ``amalgamation/strategies`` and are looked up through
``amalgamation.strategymgr.get_strategy``.
"""

import hashlib
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from amalgamation.allocators import IdAllocator
from amalgamation.completion import complete_colimit
from amalgamation.errors import AmalgamationRefused
from models.cube import CubeDiagram
from models.reports import ValidationReport
from models.structure import Embedding, FiniteStructure, LabeledStructure, Structure, TupleEntry
from models.types import ElementId, NTuple
from structures.embeddings import find_embeddings, is_isomorphic

logger = logging.getLogger(__name__)

SAMPLE_ATTEMPTS_PER_TYPE = 50


class AmalgamationStrategy(ABC):
    """
    A family of finite structures with disjoint amalgamation.

    Args:
        arity (int): The arity n shared by the family's functions and relations.
    """

    family: str = ""

    def __init__(self, arity: int) -> None:
        self.arity = arity
        self._extension_cache: Dict[tuple, List[FiniteStructure]] = {}

    @property
    def name(self) -> str:
        return self.family

    @property
    def max_k(self) -> Optional[int]:
        """Largest k with disjoint k-amalgamation, or None when every k works."""
        return None

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"

    def check_range(self, k: int, purpose: str = "amalgamation") -> None:
        """
        Refuse cube dimensions outside the strategy's amalgamation range.

        Raises:
            AmalgamationRefused: If k < 1 or k exceeds ``max_k``.
        """
        if k < 1:
            raise AmalgamationRefused(f"{purpose} needs a cube of dimension at least 1, got k={k}")
        if self.max_k is not None and k > self.max_k:
            raise AmalgamationRefused(
                f"amalgamation arity exceeded: {self.name} has disjoint k-amalgamation "
                f"only for k <= {self.max_k}; {purpose} needs k={k}"
            )

    @abstractmethod
    def validate(self, s: Structure) -> ValidationReport:
        """Membership test for the family (labels checked for A1 when present)."""

    @abstractmethod
    def fill_entry(self, t: NTuple, top_elements: Sequence[ElementId]) -> TupleEntry:
        """Entry given to a tuple of an amalgam that no boundary face covers."""

    @abstractmethod
    def candidate_rows(self, t: NTuple, elements: Sequence[ElementId], rel_cap: int) -> List[TupleEntry]:
        """Rows a one-point extension may give to the new tuple ``t``."""

    def empty(self, universe: int = 0) -> Structure:
        """The empty member; labelled when ``universe`` is positive."""
        if universe > 0:
            return LabeledStructure.empty(self.arity, universe)
        return FiniteStructure.empty(self.arity)

    def amalgamate(
        self, p: CubeDiagram, ids: Optional[IdAllocator] = None, check: bool = True
    ) -> CubeDiagram:
        """
        Complete a disjoint partial cube of family members to a full one.

        Raises:
            AmalgamationRefused: If k is outside the strategy's range.
            AmalgamationPreconditionError: If the faces or the cube are invalid.
        """
        self.check_range(p.k)
        return complete_colimit(p, self.fill_entry, self.arity, self.validate, ids, check)

    def one_point_extensions(
        self,
        base: FiniteStructure,
        new_id: ElementId,
        rel_cap: int = 1,
        type_cap: int = 4,
        seed: int = 0,
        exhaustive_limit: int = 4096,
    ) -> List[FiniteStructure]:
        """
        Extensions of a member by one new element, in canonical order.

        Every tuple of the base keeps its row; each new tuple draws its row
        from ``candidate_rows``. When the candidate space is smaller than
        ``exhaustive_limit`` it is enumerated in full, otherwise a sample is
        drawn from a generator seeded by ``seed`` and the base itself.

        Args:
            base (FiniteStructure): An unlabelled member of the family.
            new_id (int): Id of the new element, not an element of ``base``.
            rel_cap (int): Largest relation index a new tuple may take.
            type_cap (int): Maximum number of extensions returned.
            seed (int): Seed of the sampler.
            exhaustive_limit (int): Candidate count below which enumeration is exhaustive.

        Returns:
            list[FiniteStructure]: At most ``type_cap`` valid extensions, sorted
                by their canonical key. Extensions are pairwise non-isomorphic
                over the base since the base is fixed pointwise.
        """
        cache_key = (base.key(), new_id, rel_cap, type_cap, seed, exhaustive_limit)
        cached = self._extension_cache.get(cache_key)
        if cached is not None:
            return list(cached)

        elements = tuple(sorted(base.elements + (new_id,)))
        new_tuples = [t for t in product(elements, repeat=self.arity) if new_id in t]
        choices = [self.candidate_rows(t, elements, rel_cap) for t in new_tuples]
        space = 1
        for rows in choices:
            space *= len(rows)

        def build(picked: Sequence[TupleEntry]) -> FiniteStructure:
            table = dict(base.table)
            table.update(zip(new_tuples, picked))
            return FiniteStructure(self.arity, elements, table)

        found: Dict[tuple, FiniteStructure] = {}
        if space <= exhaustive_limit:
            for picked in product(*choices):
                candidate = build(picked)
                if self.validate(candidate).ok:
                    found[candidate.key()] = candidate
        else:
            digest = int(hashlib.sha256(repr(base.key()).encode()).hexdigest()[:16], 16)
            rng = np.random.default_rng([seed, digest])
            for _ in range(SAMPLE_ATTEMPTS_PER_TYPE * type_cap):
                picked = [rows[int(rng.integers(len(rows)))] for rows in choices]
                candidate = build(picked)
                if candidate.key() not in found and self.validate(candidate).ok:
                    found[candidate.key()] = candidate
                    if len(found) >= type_cap:
                        break
            logger.debug(
                "sampled %d extensions of a %d-element base from %d candidates",
                len(found), len(base), space,
            )

        result = [found[key] for key in sorted(found)][:type_cap]
        self._extension_cache[cache_key] = result
        return list(result)


def disjoint_amalgamate(
    strategy: AmalgamationStrategy,
    p: CubeDiagram,
    ids: Optional[IdAllocator] = None,
    check: bool = True,
) -> CubeDiagram:
    """
    Extend a disjoint partial k-cube to a disjoint full k-cube.

    Args:
        strategy (AmalgamationStrategy): The family.
        p (CubeDiagram): A disjoint BOUNDARY cube of family members.
        ids (IdAllocator, optional): Source of fresh top ids.
        check (bool): Validate the input first. Defaults to True.

    Returns:
        CubeDiagram: The FULL cube; restricting it to the boundary gives ``p`` back.

    Raises:
        AmalgamationRefused: If k is outside the strategy's range.
        AmalgamationPreconditionError: If the input is not a disjoint cube of members.
        LabelCollisionError: If transported labels collide in the amalgam.
    """
    return strategy.amalgamate(p, ids, check)


@dataclass(frozen=True)
class ExtensionInstance:
    """An extension axiom instance A ⊆ B, with the inclusion of A into B."""

    base: FiniteStructure
    extension: FiniteStructure
    inclusion: Embedding
    base_index: int
    extension_index: int

    @property
    def name(self) -> str:
        return f"T{self.base_index}<T{self.extension_index}"


@dataclass(frozen=True)
class ExtensionUniverse:
    """Isomorphism types of size at most S reachable from the empty structure.

    Args:
        types (tuple[FiniteStructure, ...]): Representatives on ids 0..m-1, by size.
        instances (tuple[ExtensionInstance, ...]): Pairs between consecutive sizes.
    """

    types: Tuple[FiniteStructure, ...]
    instances: Tuple[ExtensionInstance, ...]

    def of_size(self, m: int) -> List[FiniteStructure]:
        return [t for t in self.types if len(t) == m]


def extension_universe(
    strategy: AmalgamationStrategy,
    size_cap: int,
    rel_cap: int = 1,
    type_cap: int = 4,
    seed: int = 0,
    exhaustive_limit: int = 4096,
) -> ExtensionUniverse:
    """
    Grow the family from the empty structure by one-point extensions.

    Args:
        strategy (AmalgamationStrategy): The family.
        size_cap (int): Largest structure size S.
        rel_cap, type_cap, seed, exhaustive_limit: Passed to ``one_point_extensions``.

    Returns:
        ExtensionUniverse: Types deduplicated up to isomorphism (first
            occurrence kept) and one instance per (A, B) type pair.
    """
    types: List[FiniteStructure] = [FiniteStructure.empty(strategy.arity)]
    instances: List[ExtensionInstance] = []
    level = [0]
    for size in range(size_cap):
        next_level: List[int] = []
        for a_index in level:
            a = types[a_index]
            for b in strategy.one_point_extensions(a, size, rel_cap, type_cap, seed, exhaustive_limit):
                b_index, iso = None, None
                for j in next_level:
                    iso = is_isomorphic(b, types[j])
                    if iso is not None:
                        b_index = j
                        break
                if b_index is None:
                    b_index = len(types)
                    types.append(b)
                    next_level.append(b_index)
                    iso = Embedding.identity(b)
                if any(i.base_index == a_index and i.extension_index == b_index for i in instances):
                    continue
                inclusion = Embedding(a, types[b_index], {x: iso(x) for x in a.elements})
                instances.append(ExtensionInstance(a, types[b_index], inclusion, a_index, b_index))
        level = next_level
        if not level:
            break
    logger.info("extension universe up to size %d: %d types, %d instances", size_cap, len(types), len(instances))
    return ExtensionUniverse(tuple(types), tuple(instances))


def realizations(instance: ExtensionInstance, s: Structure) -> Tuple[int, int]:
    """
    Count realizations of the base of an instance in ``s`` and how many extend.

    Returns:
        tuple[int, int]: ``(realizations, extended)``.
    """
    target = s.base
    found = find_embeddings(instance.base, target)
    extended = 0
    for r in found:
        fixed = {instance.inclusion(a): r(a) for a in instance.base.elements}
        if find_embeddings(instance.extension, target, limit=1, fixed=fixed):
            extended += 1
    return len(found), extended
