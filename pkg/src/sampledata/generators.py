"""
Seeded random members, pairs and disjoint partial cubes.

Every generator takes a ``numpy.random.Generator`` so callers control the
seed. Members are grown from the empty structure by one-point extensions of
the family, which keeps them valid without rejection at the top level.
Partial cubes are built face by face in face order: a face amalgamates its
proper subfaces and then gains a few elements of its own, so every element
has a birth face and the result is disjoint by construction.
"""

from typing import Dict, List, Optional, Tuple

import numpy as np

from amalgamation.allocators import IdAllocator
from amalgamation.strategy import AmalgamationStrategy
from models.cube import CubeDiagram, CubeShape, boundary_faces, face_from_members, face_members, full_face
from models.structure import Embedding, FiniteStructure, LabeledStructure, Structure
from models.types import Face, FacePair
from structures.closure import closed_subsets

TYPE_CAP = 6


def _seed(rng: np.random.Generator) -> int:
    return int(rng.integers(2**31))


def grow(
    strategy: AmalgamationStrategy,
    base: FiniteStructure,
    extra: int,
    rng: np.random.Generator,
    ids: IdAllocator,
    rel_cap: int = 1,
) -> FiniteStructure:
    """
    Add up to ``extra`` new elements to ``base`` by random one-point extensions.

    Stops early when the family offers no extension.
    """
    current = base
    for _ in range(extra):
        options = strategy.one_point_extensions(current, ids.next_id, rel_cap, TYPE_CAP, _seed(rng))
        if not options:
            break
        ids.fresh()
        current = options[int(rng.integers(len(options)))]
    return current


def random_member(
    strategy: AmalgamationStrategy,
    size: int,
    rng: np.random.Generator,
    rel_cap: int = 1,
    ids: Optional[IdAllocator] = None,
) -> FiniteStructure:
    """A random member with at most ``size`` elements."""
    ids = ids or IdAllocator()
    return grow(strategy, FiniteStructure.empty(strategy.arity), size, rng, ids, rel_cap)


def random_labels(size: int, universe: int, rng: np.random.Generator) -> List[frozenset]:
    """``size`` pairwise distinct random label sets over ``universe`` labels."""
    if size > 2**universe:
        raise ValueError(f"{size} distinct label sets need more than {universe} labels")
    codes = rng.choice(2**universe, size=size, replace=False)
    return [frozenset(i for i in range(universe) if int(code) >> i & 1) for code in codes]


def label(s: FiniteStructure, universe: int, rng: np.random.Generator) -> LabeledStructure:
    return LabeledStructure(s, dict(zip(s.elements, random_labels(len(s), universe, rng))), universe)


def random_pair(
    strategy: AmalgamationStrategy,
    rng: np.random.Generator,
    size_a: int = 3,
    size_b: int = 4,
    rel_cap: int = 1,
) -> Tuple[FiniteStructure, FiniteStructure]:
    """
    A random pair (A, B) of members.

    Half of the time A is a closed subset of B moved to fresh ids, so that
    embeddings exist; otherwise A is drawn independently.
    """
    b = random_member(strategy, size_b, rng, rel_cap)
    if rng.random() < 0.5:
        subsets = [x for x in closed_subsets(b, size_a) if x]
        if subsets:
            chosen = subsets[int(rng.integers(len(subsets)))]
            shift = b.max_id() + 1
            return b.restrict(chosen).relabel({a: a + shift for a in chosen}), b
    return random_member(strategy, size_a, rng, rel_cap), b


def random_labeled_pair(
    strategy: AmalgamationStrategy,
    rng: np.random.Generator,
    universe: int = 3,
    size_a: int = 2,
    size_b: int = 4,
    rel_cap: int = 1,
) -> Tuple[LabeledStructure, LabeledStructure]:
    """
    A random pair of labelled members.

    When A comes from a closed subset of B it keeps B's labels, otherwise it
    gets labels of its own.
    """
    b_base = random_member(strategy, size_b, rng, rel_cap)
    universe = max(universe, int(np.ceil(np.log2(len(b_base) + 1))))
    b = label(b_base, universe, rng)
    subsets = [x for x in closed_subsets(b_base, size_a) if x]
    if subsets and rng.random() < 0.5:
        chosen = subsets[int(rng.integers(len(subsets)))]
        shift = b.max_id() + 1
        return b.restrict(chosen).relabel({x: x + shift for x in chosen}), b
    return label(random_member(strategy, size_a, rng, rel_cap), universe, rng), b


def _sub_cube(
    structures: Dict[Face, Structure], maps: Dict[FacePair, Embedding], tau: Face
) -> CubeDiagram:
    members = face_members(tau)
    m = len(members)
    lift = {s: face_from_members(members[i] for i in face_members(s)) for s in range(1 << m)}
    top = full_face(m)
    present = [s for s in range(1 << m) if s != top]
    return CubeDiagram(
        m,
        CubeShape.BOUNDARY,
        {s: structures[lift[s]] for s in present},
        {(s, t): maps[(lift[s], lift[t])] for s in present for t in present if s & ~t == 0},
    )


def random_partial_cube(
    strategy: AmalgamationStrategy,
    k: int,
    rng: np.random.Generator,
    extra: int = 1,
    rel_cap: int = 1,
) -> CubeDiagram:
    """
    A random disjoint partial k-cube of members.

    Args:
        strategy (AmalgamationStrategy): The family; it must amalgamate up to k - 1.
        k (int): Cube dimension.
        rng (np.random.Generator): Source of randomness.
        extra (int): At most this many elements are born at each face.
        rel_cap (int): Largest relation index of new tuples.

    Returns:
        CubeDiagram: A BOUNDARY cube, disjoint and functorial.
    """
    ids = IdAllocator()
    structures: Dict[Face, Structure] = {}
    maps: Dict[FacePair, Embedding] = {}
    for tau in boundary_faces(k):
        if tau == 0:
            s = random_member(strategy, int(rng.integers(extra + 1)), rng, rel_cap, ids)
            into = {}
        elif tau & (tau - 1) == 0:
            s = grow(strategy, structures[0], int(rng.integers(extra + 1)), rng, ids, rel_cap)
            into = {0: Embedding(structures[0], s, {a: a for a in structures[0].elements})}
        else:
            sub = _sub_cube(structures, maps, tau)
            amalgam = strategy.amalgamate(sub, ids, check=False)
            top = amalgam[amalgam.top]
            s = grow(strategy, top, int(rng.integers(extra + 1)), rng, ids, rel_cap)
            members = face_members(tau)
            into = {}
            for low in range(amalgam.top):
                sigma = face_from_members(members[i] for i in face_members(low))
                mapping = amalgam.map(low, amalgam.top).mapping
                into[sigma] = Embedding(structures[sigma], s, mapping)
        structures[tau] = s
        maps[(tau, tau)] = Embedding.identity(s)
        for sigma, e in into.items():
            maps[(sigma, tau)] = e
    return CubeDiagram(k, CubeShape.BOUNDARY, structures, maps)
