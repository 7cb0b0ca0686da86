"""
Extending a full disjoint k-cube along an embedding at one face.

Given h: A_rho -> B, faces tau not above rho stay as they are. Faces above rho
are rebuilt in face order: for tau with m = |tau \\ rho| > 0, the elements
a_0 < ... < a_{m-1} of tau \\ rho span a partial (m+1)-cube F whose coordinate
m selects the old cube (A) or the already extended one (B). Amalgamating F
gives B_tau as its top and h_tau as the map from the face holding A_tau.
"""

import logging
from typing import Dict, Optional, Tuple

from amalgamation.allocators import IdAllocator
from amalgamation.errors import AmalgamationPreconditionError
from amalgamation.strategy import AmalgamationStrategy
from models.cube import (
    CubeDiagram,
    CubeShape,
    CubeShapeError,
    DisjointEmbedding,
    boundary_faces,
    face_label,
    face_members,
    full_face,
    is_subface,
)
from models.structure import Embedding, Structure
from models.types import Face, FacePair

logger = logging.getLogger(__name__)


def _lift(sigma_prime: Face, rho: Face, members: Tuple[int, ...]) -> Face:
    """Face rho ∪ {a_i : i in sigma', i < m} of the k-cube."""
    face = rho
    for i, a in enumerate(members):
        if sigma_prime >> i & 1:
            face |= 1 << a
    return face


def _partial_cube(
    c: CubeDiagram,
    rho: Face,
    tau: Face,
    b_structs: Dict[Face, Structure],
    b_maps: Dict[FacePair, Embedding],
    h_maps: Dict[Face, Embedding],
) -> CubeDiagram:
    members = face_members(tau & ~rho)
    m = len(members)
    new_bit = 1 << m
    structures: Dict[Face, Structure] = {}
    for sp in boundary_faces(m + 1):
        face = _lift(sp, rho, members)
        structures[sp] = b_structs[face] if sp & new_bit else c[face]
    maps: Dict[FacePair, Embedding] = {}
    present = list(structures)
    for sp in present:
        for tp in present:
            if not is_subface(sp, tp):
                continue
            source, target = _lift(sp, rho, members), _lift(tp, rho, members)
            if sp & new_bit:
                maps[(sp, tp)] = b_maps[(source, target)]
            elif tp & new_bit:
                maps[(sp, tp)] = c.map(source, target).then(h_maps[target])
            else:
                maps[(sp, tp)] = c.map(source, target)
    return CubeDiagram(m + 1, CubeShape.BOUNDARY, structures, maps)


def extend_cube(
    c: CubeDiagram,
    rho: Face,
    h: Embedding,
    strategy: AmalgamationStrategy,
    ids: Optional[IdAllocator] = None,
    check: bool = False,
) -> Tuple[CubeDiagram, DisjointEmbedding]:
    """
    Extend a cube so that its face rho becomes the target of ``h``.

    Args:
        c (CubeDiagram): A FULL disjoint k-cube.
        rho (Face): The face to extend.
        h (Embedding): Embedding of A_rho into the new structure B.
        strategy (AmalgamationStrategy): Family used for every amalgamation.
        ids (IdAllocator, optional): Source of fresh element ids.
        check (bool): Validate every intermediate partial cube. Defaults to False.

    Returns:
        tuple[CubeDiagram, DisjointEmbedding]: The cube B with B_rho = B and
            the disjoint embedding (h_sigma) with h_rho = h and h_tau the
            identity for every tau not containing rho.

    Raises:
        CubeShapeError: If ``c`` is not FULL or ``rho`` is not a face.
        AmalgamationRefused: If the strategy lacks disjoint (k+1)-amalgamation.
        AmalgamationPreconditionError: If ``h`` does not start at A_rho.
    """
    if c.shape is not CubeShape.FULL:
        raise CubeShapeError("extend_cube needs a full cube")
    if not 0 <= rho <= full_face(c.k):
        raise CubeShapeError(f"{rho} is not a face of the {c.k}-cube")
    if h.source != c[rho]:
        raise AmalgamationPreconditionError(f"h does not start at A_{face_label(rho)}")
    strategy.check_range(c.k + 1, "cube extension")
    if ids is None:
        ids = IdAllocator.above(list(c.structures.values()) + [h.target])

    b_structs: Dict[Face, Structure] = {}
    b_maps: Dict[FacePair, Embedding] = {}
    h_maps: Dict[Face, Embedding] = {}
    for tau in c.faces():
        if not is_subface(rho, tau):
            b_structs[tau] = c[tau]
            h_maps[tau] = Embedding.identity(c[tau])
            for sigma in c.faces():
                if is_subface(sigma, tau):
                    b_maps[(sigma, tau)] = c.map(sigma, tau)
            continue

        if tau == rho:
            b_structs[rho] = h.target
            h_maps[rho] = h
            b_maps[(rho, rho)] = Embedding.identity(h.target)
            for sigma in c.faces():
                if is_subface(sigma, rho) and sigma != rho:
                    b_maps[(sigma, rho)] = c.map(sigma, rho).then(h)
            continue

        members = face_members(tau & ~rho)
        m = len(members)
        f = _partial_cube(c, rho, tau, b_structs, b_maps, h_maps)
        g = strategy.amalgamate(f, ids, check)
        top = full_face(m + 1)
        b_structs[tau] = g[top]
        h_maps[tau] = g.map(full_face(m), top)
        for sigma in c.faces():
            if not is_subface(sigma, tau):
                continue
            if is_subface(rho, sigma):
                sp = (1 << m) | sum(1 << i for i, a in enumerate(members) if sigma >> a & 1)
                b_maps[(sigma, tau)] = g.map(sp, top)
            else:
                b_maps[(sigma, tau)] = c.map(sigma, tau).then(h_maps[tau])
        logger.debug("extended face %s with a %d-cube amalgam", face_label(tau), m + 1)

    extended = CubeDiagram(c.k, CubeShape.FULL, b_structs, b_maps)
    return extended, DisjointEmbedding(c, extended, h_maps)
