"""
JSON documents for structures, cubes and embeddings.

Documents are written in canonical form: sorted keys, no whitespace, lists
in their natural order (elements by id, tuples lexicographically, faces in
face order). ``serialize(parse(d))`` is the canonical form of ``d``.
"""

import hashlib
import json
from itertools import product
from typing import Any, Dict, List, Optional, Tuple

from models.cube import CubeDiagram, CubeShape, DisjointEmbedding, MAX_K, face_order_key, shape_faces
from models.structure import Embedding, FiniteStructure, LabeledStructure, Structure, TupleEntry
from models.types import Document, Face, IdMap

VERSION = 1
FAMILY_ARITY = {"sets": 1, "graphs": 2}
FAMILIES = ("bkl", "sets", "graphs")


class StructureDocumentError(ValueError):
    """Base class for unreadable documents; ``code`` names the failure."""

    code = "document"

    def __init__(self, message: str) -> None:
        super().__init__(f"{self.code}: {message}")


class StructureDocumentBadJson(StructureDocumentError):
    """Raised when the input is not UTF-8 JSON."""

    code = "malformed-json"


class StructureDocumentSchemaError(StructureDocumentError):
    """Raised when a document does not have the expected shape."""

    code = "schema"


class StructureDocumentDanglingId(StructureDocumentError):
    """Raised when a tuple, value or map refers to an id that is not an element."""

    code = "dangling-id"


class StructureDocumentNonTotal(StructureDocumentError):
    """Raised when some n-tuple of elements has no row."""

    code = "non-total-tuple-table"


def canonical_json(value: Any) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def stable_hash(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def load_document(data: bytes | str) -> Document:
    """
    Decode a JSON object.

    Raises:
        StructureDocumentBadJson: If the input is not UTF-8 JSON or not an object.
    """
    try:
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        doc = json.loads(data)
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise StructureDocumentBadJson(str(e)) from e
    if not isinstance(doc, dict):
        raise StructureDocumentBadJson("the document root must be a JSON object")
    return doc


def _int(value: Any, label: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise StructureDocumentSchemaError(f"{label} must be an integer >= {minimum}, got {value!r}")
    return value


def _list(value: Any, label: str) -> List[Any]:
    if not isinstance(value, list):
        raise StructureDocumentSchemaError(f"{label} must be a list")
    return value


def _object(value: Any, label: str) -> Dict[str, Any]:
    if not isinstance(value, dict):
        raise StructureDocumentSchemaError(f"{label} must be an object")
    return value


def _header(doc: Document) -> Tuple[str, int, int]:
    if doc.get("version") != VERSION:
        raise StructureDocumentSchemaError(f"unsupported version {doc.get('version')!r}")
    family = doc.get("family")
    if family not in FAMILIES:
        raise StructureDocumentSchemaError(f"family must be one of {', '.join(FAMILIES)}, got {family!r}")
    n = _int(doc.get("n"), "n", 1)
    if family in FAMILY_ARITY and n != FAMILY_ARITY[family]:
        raise StructureDocumentSchemaError(f"{family} documents have n={FAMILY_ARITY[family]}, got {n}")
    universe = _int(doc.get("L", 0), "L")
    return family, n, universe


def structure_from_document(doc: Document) -> Structure:
    """
    Build a structure from a parsed structure document.

    Raises:
        StructureDocumentSchemaError: On missing keys, wrong types, duplicates or out-of-range labels.
        StructureDocumentDanglingId: If a row refers to a non-element.
        StructureDocumentNonTotal: If some tuple has no row.
    """
    _, n, universe = _header(doc)
    labels: Dict[int, frozenset] = {}
    for i, item in enumerate(_list(doc.get("elements"), "elements")):
        item = _object(item, f"elements[{i}]")
        a = _int(item.get("id"), f"elements[{i}].id")
        if a in labels:
            raise StructureDocumentSchemaError(f"element {a} is listed twice")
        marks = [_int(x, f"labels of element {a}") for x in _list(item.get("labels", []), f"labels of element {a}")]
        if any(x >= universe for x in marks):
            raise StructureDocumentSchemaError(f"element {a} has a label outside 0..{universe - 1}")
        labels[a] = frozenset(marks)
    elements = sorted(labels)
    members = set(elements)

    table: Dict[tuple, TupleEntry] = {}
    for i, row in enumerate(_list(doc.get("tuples"), "tuples")):
        row = _object(row, f"tuples[{i}]")
        t = tuple(_int(x, f"tuples[{i}].t") for x in _list(row.get("t"), f"tuples[{i}].t"))
        if len(t) != n:
            raise StructureDocumentSchemaError(f"tuple {list(t)} does not have {n} entries")
        r = _int(row.get("r"), f"tuples[{i}].r")
        s = tuple(_int(x, f"tuples[{i}].s") for x in _list(row.get("s"), f"tuples[{i}].s"))
        if len(s) != r + 1:
            raise StructureDocumentSchemaError(f"tuple {list(t)} has r={r} but {len(s)} values")
        stray = [x for x in t + s if x not in members]
        if stray:
            raise StructureDocumentDanglingId(f"tuple {list(t)} refers to non-elements {sorted(set(stray))}")
        if t in table:
            raise StructureDocumentSchemaError(f"tuple {list(t)} is listed twice")
        table[t] = TupleEntry(r, s)
    for t in product(elements, repeat=n):
        if t not in table:
            raise StructureDocumentNonTotal(f"tuple {list(t)} has no row")

    base = FiniteStructure(n, elements, table)
    if universe > 0:
        return LabeledStructure(base, labels, universe)
    return base


def parse_structure(data: bytes | str) -> Structure:
    """
    Parse a structure document.

    Args:
        data (bytes | str): UTF-8 JSON.

    Returns:
        Structure: Labelled when the document has L > 0.

    Raises:
        StructureDocumentError: With code malformed-json, schema, dangling-id
            or non-total-tuple-table.
    """
    return structure_from_document(load_document(data))


def structure_to_document(s: Structure, family: str = "bkl") -> Document:
    universe = s.universe if s.is_labeled else 0
    return {
        "version": VERSION,
        "family": family,
        "n": s.arity,
        "L": universe,
        "elements": [
            {"id": a, "labels": sorted(s.label_of(a)) if s.is_labeled else []} for a in s.elements
        ],
        "tuples": [
            {"t": list(t), "r": e.rel_index, "s": list(e.fn_values)} for t, e in sorted(s.table.items())
        ],
    }


def serialize_structure(s: Structure, family: str = "bkl") -> str:
    return canonical_json(structure_to_document(s, family))


def embedding_pairs(e: Embedding) -> List[List[int]]:
    return [list(p) for p in e.pairs()]


def cube_to_document(c: CubeDiagram, family: str = "bkl") -> Document:
    sample = next(iter(c.structures.values()), None)
    return {
        "version": VERSION,
        "k": c.k,
        "shape": c.shape.value,
        "family": family,
        "n": sample.arity if sample is not None else 1,
        "L": sample.universe if sample is not None and sample.is_labeled else 0,
        "faces": [
            {"mask": sigma, "structure": structure_to_document(c[sigma], family)}
            for sigma in sorted(c.structures, key=face_order_key)
        ],
        "maps": [
            {"from": sigma, "to": tau, "map": embedding_pairs(c.maps[(sigma, tau)])}
            for sigma, tau in sorted(c.maps, key=lambda p: (face_order_key(p[0]), face_order_key(p[1])))
            if sigma != tau
        ],
    }


def serialize_cube(c: CubeDiagram, family: str = "bkl") -> str:
    return canonical_json(cube_to_document(c, family))


def cube_from_document(doc: Document) -> CubeDiagram:
    """
    Build a cube from a cube document; identity maps may be omitted.

    Raises:
        StructureDocumentError: On malformed faces, masks or maps.
    """
    _header(doc)
    k = _int(doc.get("k"), "k")
    if k > MAX_K:
        raise StructureDocumentSchemaError(f"k={k} is above {MAX_K}")
    try:
        shape = CubeShape(doc.get("shape"))
    except ValueError as e:
        raise StructureDocumentSchemaError(f"unknown shape {doc.get('shape')!r}") from e
    allowed = set(shape_faces(k, shape))
    structures: Dict[Face, Structure] = {}
    for i, item in enumerate(_list(doc.get("faces"), "faces")):
        item = _object(item, f"faces[{i}]")
        mask = _int(item.get("mask"), f"faces[{i}].mask")
        if mask not in allowed:
            raise StructureDocumentSchemaError(f"mask {mask} is not a face of a {shape.value} {k}-cube")
        if mask in structures:
            raise StructureDocumentSchemaError(f"face {mask} is listed twice")
        structures[mask] = structure_from_document(_object(item.get("structure"), f"faces[{i}].structure"))

    maps: Dict[Tuple[Face, Face], Embedding] = {}
    for i, item in enumerate(_list(doc.get("maps"), "maps")):
        item = _object(item, f"maps[{i}]")
        sigma = _int(item.get("from"), f"maps[{i}].from")
        tau = _int(item.get("to"), f"maps[{i}].to")
        if sigma not in structures or tau not in structures:
            raise StructureDocumentSchemaError(f"map {sigma} -> {tau} refers to a missing face")
        mapping = {}
        for pair in _list(item.get("map"), f"maps[{i}].map"):
            pair = _list(pair, f"maps[{i}].map entry")
            if len(pair) != 2:
                raise StructureDocumentSchemaError(f"map {sigma} -> {tau} has an entry of length {len(pair)}")
            a, b = (_int(x, f"maps[{i}].map entry") for x in pair)
            if a not in structures[sigma] or b not in structures[tau]:
                raise StructureDocumentDanglingId(f"map {sigma} -> {tau} sends {a} to {b}")
            mapping[a] = b
        maps[(sigma, tau)] = Embedding(structures[sigma], structures[tau], mapping)
    for sigma, s in structures.items():
        maps.setdefault((sigma, sigma), Embedding.identity(s))
    return CubeDiagram(k, shape, structures, maps)


def parse_cube(data: bytes | str) -> CubeDiagram:
    return cube_from_document(load_document(data))


def is_cube_document(doc: Document) -> bool:
    return "faces" in doc


def disjoint_embedding_to_document(e: DisjointEmbedding) -> Document:
    return {
        "maps": [
            {"face": sigma, "map": embedding_pairs(e.maps[sigma])}
            for sigma in sorted(e.maps, key=face_order_key)
        ]
    }


def stage_maps_to_document(maps: Dict[Face, IdMap]) -> Document:
    """The element maps of one stage, in the layout of ``disjoint_embedding_to_document``."""
    return {
        "maps": [
            {"face": sigma, "map": [[a, b] for a, b in sorted(maps[sigma].items())]}
            for sigma in sorted(maps, key=face_order_key)
        ]
    }


def family_of(doc: Document) -> Optional[str]:
    return doc.get("family")
