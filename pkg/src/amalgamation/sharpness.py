"""
Why BKL_n stops at disjoint n-amalgamation.

``empty_face_absorption`` checks, on a full disjoint n-cube, that any choice
of one element per side that misses the opposite facet generates a
substructure swallowing the image of the bottom face. ``search_failure_witness``
exhibits a disjoint partial (n+1)-cube none of whose completions satisfies B3.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

from tqdm import tqdm

from amalgamation.errors import AmalgamationRefused
from amalgamation.strategy import AmalgamationStrategy
from models.cube import CubeDiagram, CubeShape, CubeShapeError, boundary_faces, face_members
from models.structure import Embedding, FiniteStructure, TupleEntry
from models.types import Document, ElementId, NTuple
from structures.closure import generated_substructure
from structures.validation import validate_bkl

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 300_000


def absorption_selections(cube: CubeDiagram) -> Iterator[Tuple[ElementId, ...]]:
    """Selections x_0..x_{k-1} with x_i in the image of {i} but not of [k] minus {i}."""
    top = cube.top
    pools = []
    for i in range(cube.k):
        pools.append(sorted(cube.image(1 << i) - cube.image(top & ~(1 << i))))
    return product(*pools)


def empty_face_absorption(cube: CubeDiagram) -> List[Tuple[ElementId, ...]]:
    """
    Find selections whose generated substructure misses part of the bottom image.

    Args:
        cube (CubeDiagram): A FULL disjoint n-cube of BKL_n structures.

    Returns:
        list[tuple[int, ...]]: Offending selections x_0..x_{n-1}; empty when the
            absorption property holds.

    Raises:
        CubeShapeError: If the cube is not FULL.
    """
    if cube.shape is not CubeShape.FULL:
        raise CubeShapeError("empty-face absorption needs the top face")
    top = cube[cube.top]
    bottom = cube.image(0)
    offending = []
    for selection in absorption_selections(cube):
        generated = set(generated_substructure(top, selection))
        if not bottom <= generated:
            offending.append(selection)
    if offending:
        logger.warning("%d selections fail to absorb the bottom face", len(offending))
    return offending


def trivial_structure(arity: int, elements) -> FiniteStructure:
    """Every tuple in R_0 with s_0 = c_0; every subset is closed."""
    elements = tuple(sorted(elements))
    table = {t: TupleEntry(0, (t[0],)) for t in product(elements, repeat=arity)}
    return FiniteStructure(arity, elements, table)


def canonical_failure_cube(n: int) -> CubeDiagram:
    """Partial (n+1)-cube with A_sigma the trivial structure on sigma and inclusion maps."""
    k = n + 1
    structures = {sigma: trivial_structure(n, face_members(sigma)) for sigma in boundary_faces(k)}
    maps = {}
    for sigma, a in structures.items():
        for tau, b in structures.items():
            if sigma & ~tau == 0:
                maps[(sigma, tau)] = Embedding(a, b, {x: x for x in a.elements})
    return CubeDiagram(k, CubeShape.BOUNDARY, structures, maps)


@dataclass
class FailureWitness:
    """A disjoint partial (n+1)-cube with no completion satisfying B3.

    Args:
        cube (CubeDiagram): The partial cube.
        independent_set (tuple[int, ...]): Elements independent in every completion.
        checks (list[str]): Verifications that ran.
        completions (int): Completions enumerated, or closure branches explored
            when the check is "closure-branches".
        size_cap (int): Largest completion size considered.
    """

    cube: CubeDiagram
    independent_set: Tuple[ElementId, ...]
    checks: List[str] = field(default_factory=list)
    completions: int = 0
    size_cap: int = 0

    def to_document(self) -> Document:
        return {
            "independent_set": list(self.independent_set),
            "checks": list(self.checks),
            "completions": self.completions,
            "size_cap": self.size_cap,
        }


def _covered_table(p: CubeDiagram) -> Dict[NTuple, TupleEntry]:
    table: Dict[NTuple, TupleEntry] = {}
    for sigma in p.faces():
        table.update(p[sigma].table)
    return table


def _value_sets(elements: Tuple[ElementId, ...]) -> List[TupleEntry]:
    """One row per nonempty value set: R_{|S|-1} with the sorted set as values."""
    rows = []
    for size in range(1, len(elements) + 1):
        for values in combinations(elements, size):
            rows.append(TupleEntry(size - 1, values))
    return rows


def _frozen_closure(p: CubeDiagram, candidate: Tuple[ElementId, ...]) -> bool:
    """Each (|candidate|-1)-subset is a face closed inside that face, so no completion can join them."""
    for b in candidate:
        rest = tuple(x for x in candidate if x != b)
        face = sum(1 << x for x in rest)
        if face not in p.structures or set(p[face].elements) != set(rest):
            return False
        if set(generated_substructure(p[face], rest)) != set(rest):
            return False
    return True


def completion_count(p: CubeDiagram, n: int, size_cap: int) -> int:
    """Number of completions the exhaustive check would enumerate."""
    covered = len(_covered_table(p))
    total = 0
    for size in range(p.k, size_cap + 1):
        total += (2 ** size - 1) ** (size ** n - covered)
    return total


def _exhaustive(p: CubeDiagram, n: int, size_cap: int, progress: bool) -> Tuple[bool, int]:
    covered = _covered_table(p)
    enumerated = 0
    for size in range(p.k, size_cap + 1):
        elements = tuple(range(size))
        uncovered = [t for t in product(elements, repeat=n) if t not in covered]
        rows = _value_sets(elements)
        choices = product(rows, repeat=len(uncovered))
        for picked in tqdm(choices, desc=f"Completions of size {size}", disable=not progress,
                           total=len(rows) ** len(uncovered)):
            table = dict(covered)
            table.update(zip(uncovered, picked))
            enumerated += 1
            if validate_bkl(FiniteStructure(n, elements, table)).ok:
                logger.warning("completion of size %d satisfies B3", size)
                return False, enumerated
    return True, enumerated


def _lazy(p: CubeDiagram, n: int, size_cap: int, candidate: Tuple[ElementId, ...]) -> Tuple[bool, int]:
    """
    Branch only on the uncovered tuples a closure actually reads.

    For every size and every b in the candidate, explores the closure of the
    candidate without b under every choice of value sets for the uncovered
    tuples it reaches. Returns False as soon as some branch reaches b.

    This is a proof over all completions, not an enumeration of them: a
    completion only matters through the rows the closure reads, and each
    branch stands for every completion agreeing on those rows. When the
    candidate without b is already closed in the partial cube no row is
    read, so each (size, b) pair costs a single branch and the result
    repeats the frozen-closure check.
    """
    covered = _covered_table(p)
    branches = 0
    for size in range(p.k, size_cap + 1):
        elements = tuple(range(size))
        rows = _value_sets(elements)
        for b in candidate:
            seeds = frozenset(x for x in candidate if x != b)
            stack: List[Tuple[FrozenSet[ElementId], Dict[NTuple, TupleEntry]]] = [(seeds, {})]
            while stack:
                members, chosen = stack.pop()
                branches += 1
                members, pending = _close(members, covered, chosen, n)
                if b in members:
                    return False, branches
                if pending is None:
                    continue
                for row in rows:
                    extended = dict(chosen)
                    extended[pending] = row
                    stack.append((members, extended))
    return True, branches


def _close(
    members: FrozenSet[ElementId],
    covered: Dict[NTuple, TupleEntry],
    chosen: Dict[NTuple, TupleEntry],
    n: int,
) -> Tuple[FrozenSet[ElementId], Optional[NTuple]]:
    """Close under known rows; return the first unknown tuple met, if any."""
    members = set(members)
    while True:
        added = set()
        for t in product(sorted(members), repeat=n):
            entry = covered.get(t) or chosen.get(t)
            if entry is None:
                return frozenset(members), t
            added.update(v for v in entry.fn_values if v not in members)
        if not added:
            return frozenset(members), None
        members |= added


def search_failure_witness(
    strategy: AmalgamationStrategy,
    k: int,
    size_cap: int,
    budget: int = DEFAULT_BUDGET,
    progress: bool = False,
) -> Optional[FailureWitness]:
    """
    Look for a disjoint partial k-cube with no valid completion, for k = n+1.

    The canonical candidate puts the trivial structure on sigma at each face
    sigma. Each n-subset of {0, ..., n} is then a face closed in itself, so
    the whole set is substructure-independent in every completion. This is
    checked directly, then confirmed over completions up to ``size_cap``
    elements: by enumerating every table when that fits in ``budget``,
    otherwise by branching only on the tuples the closures read. The second
    check proves the claim for all completions without listing them; for
    the canonical candidate it adds nothing beyond the frozen closure.

    Args:
        strategy (AmalgamationStrategy): A BKL_n strategy.
        k (int): Cube dimension, must be n+1.
        size_cap (int): Largest completion size enumerated.
        budget (int): Largest number of completions enumerated exhaustively.
        progress (bool): Show a progress bar for the exhaustive enumeration.

    Returns:
        FailureWitness | None: The witness, or None when a check fails.

    Raises:
        AmalgamationRefused: For families with amalgamation at every k, or k != n+1.
    """
    if strategy.max_k is None:
        raise AmalgamationRefused(
            f"{strategy.name} has disjoint k-amalgamation for every k; there is no failure witness"
        )
    n = strategy.arity
    if k != n + 1:
        raise AmalgamationRefused(f"failure witnesses are searched at k = n+1 = {n + 1}, got k={k}")
    cube = canonical_failure_cube(n)
    candidate = tuple(range(k))
    witness = FailureWitness(cube, candidate, size_cap=size_cap)

    if not _frozen_closure(cube, candidate):
        return None
    witness.checks.append("frozen-closure")

    total = completion_count(cube, n, size_cap)
    if total <= budget:
        ok, count = _exhaustive(cube, n, size_cap, progress)
        witness.checks.append("exhaustive-completions")
    else:
        logger.info("%d completions exceed the budget of %d; branching on closure reads instead", total, budget)
        ok, count = _lazy(cube, n, size_cap, candidate)
        witness.checks.append("closure-branches")
    witness.completions = count
    if not ok:
        return None
    logger.info("failure witness for k=%d verified by %s", k, ", ".join(witness.checks))
    return witness
