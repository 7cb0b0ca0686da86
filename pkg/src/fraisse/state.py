"""
Immutable snapshots of a Fraïssé run.

A RunState keeps the current cube and the element maps of the disjoint
embeddings between consecutive stages, so any earlier element can be
followed to the current stage. Stage cubes are kept only when the run
persists them, in which case every step can be re-checked after the fact.
"""

from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, Optional, Tuple

from fraisse.config import RunConfig
from models.cube import CubeDiagram, CubeShape, DisjointEmbedding, face_label, faces, is_subface
from models.structure import Embedding, FiniteStructure, LabeledStructure
from models.types import Document, ElementId, Face, IdMap, LabelSet

StageMaps = Dict[Face, IdMap]


@dataclass(frozen=True)
class ExtensionTask:
    """
    Extend the closed subset ``base`` of face ``face`` (as it was at ``stage``)
    by one new element, following ``extension``.

    Args:
        face (Face): The face rho.
        stage (int): Stage the base set refers to.
        base (tuple[int, ...]): A closed subset of A^stage_rho, sorted.
        extension (FiniteStructure): B' on ids 0..len(base); id i < len(base)
            stands for base[i], the last id is the new element.
    """

    face: Face
    stage: int
    base: Tuple[ElementId, ...]
    extension: FiniteStructure

    @property
    def new_id(self) -> ElementId:
        return len(self.base)

    def describe(self) -> str:
        return f"extend {face_label(self.face)} over {list(self.base)}@{self.stage}"

    def to_document(self) -> Document:
        return {"face": self.face, "stage": self.stage, "base": list(self.base)}


@dataclass(frozen=True)
class WitnessChain:
    """
    Elements x_j of A^j_sigma whose images y_j in the top face avoid the image of A^j_tau.

    Args:
        sigma (Face): The face holding the x_j.
        tau (Face): The face whose image the y_j avoid.
        birth (int): Stage of x_birth, the first recorded element.
        xs (tuple[int, ...]): x_birth, x_birth+1, ...
        ys (tuple[int, ...]): y_birth, y_birth+1, ...
    """

    sigma: Face
    tau: Face
    birth: int
    xs: Tuple[ElementId, ...]
    ys: Tuple[ElementId, ...]

    @property
    def x(self) -> ElementId:
        return self.xs[-1]

    @property
    def y(self) -> ElementId:
        return self.ys[-1]

    @property
    def last_stage(self) -> int:
        return self.birth + len(self.xs) - 1

    def advance(self, e: DisjointEmbedding) -> "WitnessChain":
        """Follow the chain along one stage of the history."""
        return replace(
            self,
            xs=self.xs + (e[self.sigma](self.x),),
            ys=self.ys + (e[e.source.top](self.y),),
        )

    def holds_at(self, cube: CubeDiagram) -> bool:
        """y = f^sigma(x) and y lies outside the image of tau."""
        return (
            cube.map(self.sigma, cube.top)(self.x) == self.y
            and self.y not in cube.image(self.tau)
        )

    def to_document(self) -> Document:
        return {
            "sigma": self.sigma,
            "tau": self.tau,
            "birth": self.birth,
            "x": list(self.xs),
            "y": list(self.ys),
        }


def empty_cube(k: int, arity: int, universe: int = 0) -> CubeDiagram:
    """The k-cube with the empty structure on every face."""
    empty = LabeledStructure.empty(arity, universe) if universe > 0 else FiniteStructure.empty(arity)
    all_faces = faces(k)
    structures = {sigma: empty for sigma in all_faces}
    maps = {
        (sigma, tau): Embedding(empty, empty, {})
        for sigma in all_faces
        for tau in all_faces
        if is_subface(sigma, tau)
    }
    return CubeDiagram(k, CubeShape.FULL, structures, maps)


@dataclass(frozen=True)
class RunState:
    """
    Stage i of a run.

    Args:
        config (RunConfig): The run's configuration.
        cube (CubeDiagram): A^i.
        stage (int): The stage index i.
        history (tuple[dict, ...]): Element maps of (h^j) from A^j to A^{j+1}, per face.
        stages (tuple[CubeDiagram, ...]): A^0, ..., A^i when ``config.keep_stages``
            is set, otherwise empty.
        queue (tuple[ExtensionTask, ...]): Pending tasks, FIFO.
        chains (tuple[WitnessChain, ...]): Open witness chains.
        next_id (int): Next fresh element id.
        used_labels (frozenset): Label sets handed out so far.
        rounds_completed (int): Finished rounds.
    """

    config: RunConfig
    cube: CubeDiagram
    stage: int = 0
    history: Tuple[StageMaps, ...] = ()
    stages: Tuple[CubeDiagram, ...] = ()
    queue: Tuple[ExtensionTask, ...] = ()
    chains: Tuple[WitnessChain, ...] = ()
    next_id: int = 0
    used_labels: FrozenSet[LabelSet] = field(default_factory=frozenset)
    rounds_completed: int = 0

    @classmethod
    def initial(cls, config: RunConfig) -> "RunState":
        """Stage 0: the empty k-cube."""
        cube = empty_cube(config.k, config.arity, config.labels)
        return cls(config, cube, stages=(cube,) if config.keep_stages else ())

    def advance(self, cube: CubeDiagram, e: DisjointEmbedding) -> "RunState":
        """Stage i+1 reached along ``e``; the stage cube is kept only when configured."""
        return replace(
            self,
            cube=cube,
            stage=self.stage + 1,
            history=self.history + (stage_maps(e),),
            stages=self.stages + (cube,) if self.config.keep_stages else (),
        )

    def stage_cube(self, i: int) -> CubeDiagram:
        """
        The cube A^i.

        Raises:
            ValueError: If stage ``i`` is neither the current one nor kept.
        """
        if i == self.stage:
            return self.cube
        if not 0 <= i < self.stage:
            raise ValueError(f"stage {i} is outside 0..{self.stage}")
        if not self.stages:
            raise ValueError(f"stage {i} was not kept; run with keep_stages")
        return self.stages[i]

    def stage_embedding(self, i: int) -> DisjointEmbedding:
        """The disjoint embedding h^i: A^i -> A^{i+1}, rebuilt from kept stages."""
        source, target = self.stage_cube(i), self.stage_cube(i + 1)
        maps = self.history[i]
        return DisjointEmbedding(
            source, target, {sigma: Embedding(source[sigma], target[sigma], maps[sigma]) for sigma in maps}
        )

    def chain(self, sigma: Face, tau: Face) -> Optional[WitnessChain]:
        for c in self.chains:
            if c.sigma == sigma and c.tau == tau:
                return c
        return None


def stage_maps(e: DisjointEmbedding) -> StageMaps:
    return {sigma: dict(h.mapping) for sigma, h in e.maps.items()}


def history_composite(state: RunState, face: Face, from_stage: int, to_stage: Optional[int] = None) -> IdMap:
    """
    Compose the history maps of one face.

    Args:
        state (RunState): The run.
        face (Face): The face.
        from_stage (int): Start stage.
        to_stage (int, optional): End stage; defaults to the current stage.

    Returns:
        dict[int, int]: The element map of A^from_face -> A^to_face.

    Raises:
        ValueError: If the stages are out of order or out of range.
    """
    to_stage = state.stage if to_stage is None else to_stage
    if not 0 <= from_stage <= to_stage <= state.stage:
        raise ValueError(f"cannot compose history from stage {from_stage} to {to_stage}")
    domain = state.history[from_stage][face] if from_stage < state.stage else state.cube[face].elements
    composite = {a: a for a in domain}
    for maps in state.history[from_stage:to_stage]:
        step_map = maps[face]
        composite = {a: step_map[b] for a, b in composite.items()}
    return composite
