"""
Set-level colimit of a partial cube.

The colimit is the disjoint union of all boundary faces with f^sigma_tau(a)
identified with f^sigma_tau'(a). Nodes of the identification graph are pairs
(face, element id); union-find collapses them into classes, each represented
by its least member (element id first, then face order). Classes receive fresh
top ids in increasing representative order.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, List, Optional, Tuple

from amalgamation.allocators import IdAllocator
from amalgamation.errors import AmalgamationPreconditionError
from cubes.validators import validate_disjoint
from models.cube import CubeDiagram, CubeShape, CubeShapeError, face_label, face_order_key
from models.types import ElementId, Face

logger = logging.getLogger(__name__)

Node = Tuple[Face, ElementId]


class UnionFind:
    """Disjoint sets with path compression; the root of a set is its least member.

    Args:
        key (Callable, optional): Sort key deciding which member is least.
    """

    def __init__(self, key: Optional[Callable[[Hashable], object]] = None) -> None:
        self.parent: Dict[Hashable, Hashable] = {}
        self._key = key or (lambda x: x)

    def find(self, x: Hashable) -> Hashable:
        if x not in self.parent:
            self.parent[x] = x
            return x

        if self.parent[x] != x:
            self.parent[x] = self.find(self.parent[x])

        return self.parent[x]

    def union(self, x: Hashable, y: Hashable) -> None:
        px = self.find(x)
        py = self.find(y)
        root = min(px, py, key=self._key)
        self.parent[px] = self.parent[py] = root

    def classes(self) -> Dict[Hashable, List[Hashable]]:
        """Members grouped by root."""
        groups: Dict[Hashable, List[Hashable]] = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return groups


@dataclass(frozen=True)
class SetColimit:
    """The quotient set together with the induced injection of every face.

    Args:
        elements (tuple[int, ...]): Top element ids, increasing.
        injections (dict[Face, dict[int, int]]): f^sigma into the top, per face.
        representatives (dict[int, tuple[int, int]]): Least (face, id) node per top id.
    """

    elements: Tuple[ElementId, ...]
    injections: Dict[Face, Dict[ElementId, ElementId]]
    representatives: Dict[ElementId, Node]

    def __len__(self) -> int:
        return len(self.elements)


def _node_key(node: Node) -> Tuple:
    face, a = node
    return (a, face_order_key(face))


def set_colimit(
    p: CubeDiagram, ids: Optional[IdAllocator] = None, check: bool = True
) -> SetColimit:
    """
    Compute the colimit of a partial cube in the category of sets.

    Args:
        p (CubeDiagram): A BOUNDARY cube.
        ids (IdAllocator, optional): Source of fresh top ids. Defaults to a
            counter starting above every id in ``p``.
        check (bool): Validate functoriality and disjointness first. Defaults to True.

    Returns:
        SetColimit: The quotient and its injections.

    Raises:
        CubeShapeError: If ``p`` is not a BOUNDARY cube.
        AmalgamationPreconditionError: If ``p`` is not functorial or not disjoint,
            or an induced map fails to be injective.
    """
    if p.shape is not CubeShape.BOUNDARY:
        raise CubeShapeError(f"set_colimit expects a boundary cube, got {p.shape.value}")
    if check:
        report = validate_disjoint(p)
        if not report.ok:
            raise AmalgamationPreconditionError(
                f"partial {p.k}-cube rejected: {', '.join(report.rules())}", report
            )
    ids = ids or IdAllocator.above(p.structures.values())

    uf = UnionFind(key=_node_key)
    present = p.faces()
    for sigma in present:
        for a in p[sigma].elements:
            uf.find((sigma, a))
    for (sigma, tau), f in p.maps.items():
        if sigma == tau:
            continue
        for a, b in f.mapping.items():
            uf.union((sigma, a), (tau, b))

    groups = uf.classes()
    top_of_root: Dict[Node, ElementId] = {}
    representatives: Dict[ElementId, Node] = {}
    for root in sorted(groups, key=_node_key):
        top_id = ids.fresh()
        top_of_root[root] = top_id
        representatives[top_id] = root

    injections: Dict[Face, Dict[ElementId, ElementId]] = {}
    for sigma in present:
        inj = {a: top_of_root[uf.find((sigma, a))] for a in p[sigma].elements}
        if len(set(inj.values())) != len(inj):
            raise AmalgamationPreconditionError(
                f"face {face_label(sigma)} is not injected into the colimit; the cube is not disjoint"
            )
        injections[sigma] = inj

    logger.debug("colimit of %d faces has %d classes", len(present), len(representatives))
    return SetColimit(tuple(sorted(representatives)), injections, representatives)
