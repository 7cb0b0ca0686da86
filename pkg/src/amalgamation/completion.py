"""
Turning a set colimit into a full member structure.

Tuples that land inside the image of some boundary face copy that face's
entry through the injection; every other tuple is filled by the family's
rule. For BKL_n the rule gives the tuple relation index N = |top| - 1 and
function values c_0, ..., c_N, the top elements in increasing id order, so
any such tuple generates the whole amalgam.
"""

import logging
from itertools import product
from typing import Callable, Dict, Optional, Sequence

from amalgamation.allocators import IdAllocator
from amalgamation.colimit import SetColimit, set_colimit
from amalgamation.errors import (
    AmalgamationPreconditionError,
    AmalgamationRefused,
    LabelCollisionError,
)
from models.cube import CubeDiagram, CubeShape, CubeShapeError, face_label
from models.reports import ValidationReport
from models.structure import (
    Embedding,
    FiniteStructure,
    LabeledStructure,
    Structure,
    TupleEntry,
)
from models.types import ElementId, LabelSet, NTuple
from structures.validation import validate_structure

logger = logging.getLogger(__name__)

FillRule = Callable[[NTuple, Sequence[ElementId]], TupleEntry]
FaceValidator = Callable[[Structure], ValidationReport]


def bkl_fill_entry(t: NTuple, top_elements: Sequence[ElementId]) -> TupleEntry:
    """R_N(t) and s_i(t) = c_i for the enumeration c_0 < ... < c_N of the top."""
    return TupleEntry(len(top_elements) - 1, tuple(top_elements))


def _signature(p: CubeDiagram) -> tuple:
    structures = list(p.structures.values())
    arities = {s.arity for s in structures}
    labeled = {s.is_labeled for s in structures}
    universes = {s.universe for s in structures if s.is_labeled}
    if len(arities) > 1 or len(labeled) > 1 or len(universes) > 1:
        raise AmalgamationPreconditionError(
            "faces of the partial cube mix arities, labelled and unlabelled structures or label universes"
        )
    arity = arities.pop() if arities else None
    return arity, (labeled.pop() if labeled else False), (universes.pop() if universes else None)


def _top_labels(p: CubeDiagram, colimit: SetColimit) -> Dict[ElementId, LabelSet]:
    labels: Dict[ElementId, LabelSet] = {}
    for sigma, inj in colimit.injections.items():
        s = p[sigma]
        for a, top in inj.items():
            known = labels.setdefault(top, s.label_of(a))
            if known != s.label_of(a):
                raise AmalgamationPreconditionError(
                    f"element {top} of the amalgam gets labels {sorted(known)} and "
                    f"{sorted(s.label_of(a))} from different faces"
                )
    owners: Dict[LabelSet, ElementId] = {}
    for top, label in sorted(labels.items()):
        if label in owners:
            raise LabelCollisionError(
                f"amalgam elements {owners[label]} and {top} both carry labels {sorted(label)}"
            )
        owners[label] = top
    return labels


def build_top(p: CubeDiagram, colimit: SetColimit, arity: int, fill: FillRule) -> FiniteStructure:
    """Tuple table of the amalgam: transported entries first, the fill rule elsewhere."""
    table: Dict[NTuple, TupleEntry] = {}
    for sigma in p.faces():
        inj = colimit.injections[sigma]
        for t, entry in p[sigma].table.items():
            image = tuple(inj[a] for a in t)
            moved = TupleEntry(entry.rel_index, tuple(inj[v] for v in entry.fn_values))
            known = table.setdefault(image, moved)
            if known != moved:
                raise AmalgamationPreconditionError(
                    f"tuple {image} is assigned differently by face {face_label(sigma)}"
                )
    elements = colimit.elements
    filled = 0
    for t in product(elements, repeat=arity):
        if t not in table:
            table[t] = fill(t, elements)
            filled += 1
    logger.debug("amalgam of %d elements: %d tuples filled by the family rule", len(elements), filled)
    return FiniteStructure(arity, elements, table)


def complete_colimit(
    p: CubeDiagram,
    fill: FillRule,
    arity: int,
    validate: Optional[FaceValidator] = None,
    ids: Optional[IdAllocator] = None,
    check: bool = True,
) -> CubeDiagram:
    """
    Complete a disjoint partial cube to a full one with a family's fill rule.

    Args:
        p (CubeDiagram): A disjoint BOUNDARY cube.
        fill (FillRule): Entry for tuples not covered by any face.
        arity (int): Arity of the family (used when every face is empty).
        validate (FaceValidator, optional): Per-face membership check run when ``check``.
        ids (IdAllocator, optional): Source of fresh top ids.
        check (bool): Validate faces and the cube before amalgamating. Defaults to True.

    Returns:
        CubeDiagram: The FULL cube extending ``p``.

    Raises:
        AmalgamationPreconditionError: On invalid faces, non-disjoint or non-functorial input.
        LabelCollisionError: If two top elements would share a label set.
    """
    if p.shape is not CubeShape.BOUNDARY:
        raise CubeShapeError(f"expected a boundary cube, got {p.shape.value}")
    face_arity, labeled, universe = _signature(p)
    if face_arity is not None and face_arity != arity:
        raise AmalgamationPreconditionError(f"faces have arity {face_arity}, the family has {arity}")
    if check and validate is not None:
        for sigma in p.faces():
            report = validate(p[sigma])
            if not report.ok:
                raise AmalgamationPreconditionError(
                    f"face {face_label(sigma)} is not a member of the family: {', '.join(report.rules())}",
                    report,
                )

    colimit = set_colimit(p, ids, check)
    top: Structure = build_top(p, colimit, arity, fill)
    if labeled:
        top = LabeledStructure(top, _top_labels(p, colimit), universe)

    full = p.top
    structures = dict(p.structures)
    structures[full] = top
    maps = dict(p.maps)
    maps[(full, full)] = Embedding.identity(top)
    for sigma in p.faces():
        maps[(sigma, full)] = Embedding(p[sigma], top, colimit.injections[sigma])
    return CubeDiagram(p.k, CubeShape.FULL, structures, maps)


def complete_bkl(
    p: CubeDiagram, n: int, ids: Optional[IdAllocator] = None, check: bool = True
) -> CubeDiagram:
    """
    Disjoint k-amalgamation of BKL_n structures for 1 <= k <= n.

    Args:
        p (CubeDiagram): A disjoint partial k-cube of BKL_n structures.
        n (int): The arity.
        ids (IdAllocator, optional): Source of fresh top ids.
        check (bool): Validate the faces (B1-B4, A1) and the cube first.

    Returns:
        CubeDiagram: The FULL cube; its top passes ``validate_bkl``.

    Raises:
        AmalgamationRefused: If k is 0 or exceeds n.
        AmalgamationPreconditionError: On invalid or non-disjoint input.
    """
    if p.k < 1:
        raise AmalgamationRefused("amalgamation needs k >= 1")
    if p.k > n:
        raise AmalgamationRefused(
            f"amalgamation arity exceeded: BKL_{n} has disjoint k-amalgamation only for k <= {n}, got k={p.k}"
        )
    return complete_colimit(p, bkl_fill_entry, n, validate_structure, ids, check)
