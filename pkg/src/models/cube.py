"""
Cube-shaped diagrams of structures.

Faces of the combinatorial k-cube are subsets of [k] = {0, ..., k-1} stored as
bitmasks. Every iteration over faces uses the same total order (popcount, then
mask value), which fixes all "first witness" tie-breaks downstream.
"""

from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from models.structure import Embedding, Structure
from models.types import Face, FacePair

MAX_K = 16


class CubeShapeError(ValueError):
    """Raised when a cube is missing faces or maps, or shapes do not match."""


class CubeShape(str, Enum):
    """FULL cubes have every face; BOUNDARY cubes omit the top face [k]."""

    FULL = "full"
    BOUNDARY = "boundary"


def full_face(k: int) -> Face:
    return (1 << k) - 1


def face_order_key(mask: Face) -> Tuple[int, int]:
    return (bin(mask).count("1"), mask)


def faces(k: int) -> List[Face]:
    """All faces of the k-cube, ordered by popcount then mask."""
    if not 0 <= k <= MAX_K:
        raise CubeShapeError(f"k={k} is outside 0..{MAX_K}")
    return sorted(range(1 << k), key=face_order_key)


def boundary_faces(k: int) -> List[Face]:
    top = full_face(k)
    return [f for f in faces(k) if f != top]


def shape_faces(k: int, shape: CubeShape) -> List[Face]:
    return faces(k) if shape is CubeShape.FULL else boundary_faces(k)


def is_subface(sigma: Face, tau: Face) -> bool:
    return sigma & ~tau == 0


def subfaces(mask: Face) -> List[Face]:
    """Faces contained in ``mask``, in face order."""
    subs = []
    sub = mask
    while True:
        subs.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return sorted(subs, key=face_order_key)


def face_members(mask: Face) -> Tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def face_from_members(members: Iterable[int]) -> Face:
    mask = 0
    for i in members:
        mask |= 1 << i
    return mask


def face_label(mask: Face) -> str:
    """Readable name of a face, e.g. ``{0,2}`` or ``∅``."""
    if mask == 0:
        return "∅"
    return "{" + ",".join(str(i) for i in face_members(mask)) + "}"


def ordered_pairs_not_contained(k: int) -> List[FacePair]:
    """Ordered face pairs (sigma, tau) with sigma not a subset of tau."""
    fs = faces(k)
    return [(s, t) for s in fs for t in fs if not is_subface(s, t)]


class CubeDiagram:
    """A functor from (the boundary of) the face poset of the k-cube to structures.

    Args:
        k (int): Cube dimension.
        shape (CubeShape): FULL or BOUNDARY.
        structures (Mapping[Face, Structure]): A_sigma per present face.
        maps (Mapping[FacePair, Embedding]): f^sigma_tau for sigma ⊆ tau, both present.

    Raises:
        CubeShapeError: If k is outside the supported range.
    """

    def __init__(
        self,
        k: int,
        shape: CubeShape,
        structures: Mapping[Face, Structure],
        maps: Mapping[FacePair, Embedding],
    ) -> None:
        if not 0 <= k <= MAX_K:
            raise CubeShapeError(f"k={k} is outside 0..{MAX_K}")
        self.k = k
        self.shape = CubeShape(shape)
        self.structures: Dict[Face, Structure] = dict(structures)
        self.maps: Dict[FacePair, Embedding] = dict(maps)

    @classmethod
    def from_covers(
        cls,
        k: int,
        shape: CubeShape,
        structures: Mapping[Face, Structure],
        covers: Mapping[FacePair, Embedding],
    ) -> "CubeDiagram":
        """
        Build a cube from its covering maps sigma → sigma ∪ {i}.

        Every other map is the composite along the chain that adds the missing
        coordinates in increasing order; identities are added for each face.
        """
        present = shape_faces(k, shape)
        maps: Dict[FacePair, Embedding] = {}
        for sigma in present:
            maps[(sigma, sigma)] = Embedding.identity(structures[sigma])
        for sigma in present:
            for tau in present:
                if sigma == tau or not is_subface(sigma, tau):
                    continue
                current, emb = sigma, None
                for i in face_members(tau & ~sigma):
                    step = covers[(current, current | 1 << i)]
                    emb = step if emb is None else emb.then(step)
                    current |= 1 << i
                maps[(sigma, tau)] = emb
        return cls(k, shape, structures, maps)

    @property
    def top(self) -> Face:
        return full_face(self.k)

    def faces(self) -> List[Face]:
        """Faces required by the shape, in face order."""
        return shape_faces(self.k, self.shape)

    def __getitem__(self, sigma: Face) -> Structure:
        return self.structures[sigma]

    def map(self, sigma: Face, tau: Face) -> Embedding:
        try:
            return self.maps[(sigma, tau)]
        except KeyError as e:
            raise CubeShapeError(
                f"No map {face_label(sigma)} -> {face_label(tau)} in the cube"
            ) from e

    def image(self, sigma: Face, tau: Optional[Face] = None) -> frozenset:
        """The set f^sigma_tau(A_sigma); tau defaults to the top face."""
        tau = self.top if tau is None else tau
        return self.map(sigma, tau).image()

    def restrict_to_boundary(self) -> "CubeDiagram":
        """Drop the top face and every map into it."""
        top = self.top
        return CubeDiagram(
            self.k,
            CubeShape.BOUNDARY,
            {f: s for f, s in self.structures.items() if f != top},
            {p: m for p, m in self.maps.items() if p[1] != top},
        )

    def size(self) -> int:
        """Total number of elements over all faces."""
        return sum(len(s) for s in self.structures.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CubeDiagram):
            return NotImplemented
        return (
            self.k == other.k
            and self.shape == other.shape
            and self.structures == other.structures
            and {p: m.pairs() for p, m in self.maps.items()}
            == {p: m.pairs() for p, m in other.maps.items()}
        )

    def __repr__(self) -> str:
        sizes = ", ".join(f"{face_label(f)}:{len(s)}" for f, s in sorted(
            self.structures.items(), key=lambda kv: face_order_key(kv[0])))
        return f"CubeDiagram(k={self.k}, shape={self.shape.value}, sizes=[{sizes}])"


class DisjointEmbedding:
    """A family of embeddings h_sigma: A_sigma → B_sigma between two cubes."""

    def __init__(
        self,
        source: CubeDiagram,
        target: CubeDiagram,
        maps: Mapping[Face, Embedding],
    ) -> None:
        self.source = source
        self.target = target
        self.maps: Dict[Face, Embedding] = dict(maps)

    @classmethod
    def identity(cls, cube: CubeDiagram) -> "DisjointEmbedding":
        """The identity disjoint embedding of a cube into itself."""
        return cls(cube, cube, {f: Embedding.identity(s) for f, s in cube.structures.items()})

    def __getitem__(self, sigma: Face) -> Embedding:
        return self.maps[sigma]

    def then(self, other: "DisjointEmbedding") -> "DisjointEmbedding":
        """Return the face-wise composite ``other ∘ self``."""
        return DisjointEmbedding(
            self.source,
            other.target,
            {f: h.then(other.maps[f]) for f, h in self.maps.items()},
        )
