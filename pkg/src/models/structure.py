"""
Value types for finite BKL_n structures and their labeled expansions.

A structure stores its infinite families of n-ary functions s_i and relations
R_j compressed: every n-tuple c maps to a TupleEntry holding the unique index
j_c with R_{j_c}(c) and the values s_0(c), ..., s_{j_c}(c). All later values
s_i(c), i > j_c, are implicitly c_0.

Structures are immutable after construction. The constructors do not check
the structural invariants (sorted ids, totality, closure); that is the job of
``structures.validation.structural_errors`` so malformed values can still be
reported on rather than rejected outright.
"""

from dataclasses import dataclass
from itertools import product
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

from models.types import ElementId, IdMap, LabelSet, NTuple


class StructureError(ValueError):
    """Raised when a structure is used in a way its shape does not allow."""


class StructureMismatchError(StructureError):
    """Raised when two structures of different arity or labelling are compared."""


class AssignmentError(StructureError):
    """Raised when an assignment or map refers to an id that is not an element."""


@dataclass(frozen=True, order=True)
class TupleEntry:
    """Compressed row of a tuple table.

    Args:
        rel_index (int): The unique j with R_j holding of the tuple.
        fn_values (tuple[int, ...]): s_0(c), ..., s_j(c).
    """

    rel_index: int
    fn_values: Tuple[ElementId, ...]

    def value(self, i: int, t: NTuple) -> ElementId:
        """Return s_i(t), using the implicit c_0 value above the relation index."""
        if i <= self.rel_index and i < len(self.fn_values):
            return self.fn_values[i]
        return t[0]


def decompress(entry: TupleEntry, t: NTuple, upto: int) -> Tuple[int, Tuple[ElementId, ...]]:
    """
    Expand a tuple entry into its relation index and the first ``upto`` function values.

    Args:
        entry (TupleEntry): The compressed entry of ``t``.
        t (NTuple): The tuple the entry belongs to.
        upto (int): How many function values s_0, ..., s_{upto-1} to produce.

    Returns:
        tuple: ``(rel_index, values)``.
    """
    return entry.rel_index, tuple(entry.value(i, t) for i in range(upto))


def compress(rel_index: int, values: Iterable[ElementId], t: NTuple) -> TupleEntry:
    """
    Compress a relation index and a run of function values back into an entry.

    Args:
        rel_index (int): The relation index of ``t``.
        values (Iterable[int]): s_0(t), s_1(t), ... (at least rel_index + 1 of them).
        t (NTuple): The tuple the values belong to.

    Returns:
        TupleEntry: The compressed entry.

    Raises:
        StructureError: If too few values are given, or a value above the
            relation index differs from t[0].
    """
    values = tuple(values)
    if len(values) < rel_index + 1:
        raise StructureError(
            f"Need {rel_index + 1} function values for relation index {rel_index}, got {len(values)}"
        )
    for i, v in enumerate(values[rel_index + 1 :], start=rel_index + 1):
        if v != t[0]:
            raise StructureError(f"s_{i}{t} = {v} breaks the compression rule s_i(c) = c_0")
    return TupleEntry(rel_index, values[: rel_index + 1])


class FiniteStructure:
    """A finite L_n-structure given by its total, compressed tuple table.

    Args:
        arity (int): The shared arity n of all s_i and R_j.
        elements (Iterable[int]): Element ids, sorted and without duplicates.
        table (Mapping[NTuple, TupleEntry]): One entry per n-tuple over elements.
    """

    __slots__ = ("_arity", "_elements", "_members", "_table", "_key")

    is_labeled = False

    def __init__(
        self,
        arity: int,
        elements: Iterable[ElementId],
        table: Mapping[NTuple, TupleEntry],
    ) -> None:
        self._arity = arity
        self._elements = tuple(elements)
        self._members = frozenset(self._elements)
        self._table = MappingProxyType(dict(table))
        self._key = None

    @classmethod
    def empty(cls, arity: int) -> "FiniteStructure":
        """Return the empty structure of the given arity."""
        return cls(arity, (), {})

    @property
    def arity(self) -> int:
        return self._arity

    @property
    def elements(self) -> Tuple[ElementId, ...]:
        return self._elements

    @property
    def table(self) -> Mapping[NTuple, TupleEntry]:
        return self._table

    @property
    def base(self) -> "FiniteStructure":
        return self

    def __len__(self) -> int:
        return len(self._elements)

    def __contains__(self, a: object) -> bool:
        return a in self._members

    def tuples(self) -> Iterator[NTuple]:
        """Iterate over all n-tuples of elements in lexicographic order."""
        return product(self._elements, repeat=self._arity)

    def entry(self, t: NTuple) -> TupleEntry:
        """Return the entry of ``t``.

        Raises:
            AssignmentError: If ``t`` is not a tuple of this structure.
        """
        try:
            return self._table[t]
        except KeyError as e:
            raise AssignmentError(f"{t} is not an {self._arity}-tuple of the structure") from e

    def rel(self, t: NTuple) -> int:
        return self.entry(t).rel_index

    def fn(self, i: int, t: NTuple) -> ElementId:
        return self.entry(t).value(i, t)

    def key(self) -> tuple:
        """Hashable canonical key (arity, elements, sorted table rows)."""
        if self._key is None:
            self._key = (
                self._arity,
                self._elements,
                tuple(sorted(self._table.items())),
            )
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteStructure):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"FiniteStructure(arity={self._arity}, elements={list(self._elements)})"

    def restrict(self, element_set: Iterable[ElementId]) -> "FiniteStructure":
        """
        Return the substructure induced on a closed subset of elements.

        Raises:
            StructureError: If the subset is not closed under the functions.
        """
        keep = sorted(set(element_set))
        members = frozenset(keep)
        table = {}
        for t in product(keep, repeat=self._arity):
            entry = self.entry(t)
            if not members.issuperset(entry.fn_values):
                raise StructureError(f"{keep} is not closed: {t} has values {entry.fn_values}")
            table[t] = entry
        return FiniteStructure(self._arity, keep, table)

    def relabel(self, id_map: IdMap) -> "FiniteStructure":
        """Transport the structure along an injective id map defined on every element."""
        table = {
            tuple(id_map[a] for a in t): TupleEntry(
                e.rel_index, tuple(id_map[v] for v in e.fn_values)
            )
            for t, e in self._table.items()
        }
        return FiniteStructure(self._arity, sorted(id_map[a] for a in self._elements), table)

    def max_id(self) -> int:
        """Largest element id, or -1 for the empty structure."""
        return self._elements[-1] if self._elements else -1


class LabeledStructure:
    """A FiniteStructure expanded by unary predicates P_0, ..., P_{L-1}.

    Args:
        base (FiniteStructure): The underlying L_n-structure.
        labels (Mapping[int, Iterable[int]]): Label indices per element.
        universe (int): Size L of the label universe.
    """

    __slots__ = ("_base", "_labels", "_universe", "_key")

    is_labeled = True

    def __init__(
        self,
        base: FiniteStructure,
        labels: Mapping[ElementId, Iterable[int]],
        universe: int,
    ) -> None:
        self._base = base
        self._labels = MappingProxyType(
            {a: frozenset(labels.get(a, ())) for a in base.elements}
        )
        self._universe = universe
        self._key = None

    @classmethod
    def empty(cls, arity: int, universe: int) -> "LabeledStructure":
        return cls(FiniteStructure.empty(arity), {}, universe)

    @property
    def base(self) -> FiniteStructure:
        return self._base

    @property
    def labels(self) -> Mapping[ElementId, LabelSet]:
        return self._labels

    @property
    def universe(self) -> int:
        return self._universe

    @property
    def arity(self) -> int:
        return self._base.arity

    @property
    def elements(self) -> Tuple[ElementId, ...]:
        return self._base.elements

    @property
    def table(self) -> Mapping[NTuple, TupleEntry]:
        return self._base.table

    def __len__(self) -> int:
        return len(self._base)

    def __contains__(self, a: object) -> bool:
        return a in self._base

    def tuples(self) -> Iterator[NTuple]:
        return self._base.tuples()

    def entry(self, t: NTuple) -> TupleEntry:
        return self._base.entry(t)

    def rel(self, t: NTuple) -> int:
        return self._base.rel(t)

    def fn(self, i: int, t: NTuple) -> ElementId:
        return self._base.fn(i, t)

    def label_of(self, a: ElementId) -> LabelSet:
        return self._labels[a]

    def max_id(self) -> int:
        return self._base.max_id()

    def key(self) -> tuple:
        if self._key is None:
            self._key = (
                self._base.key(),
                self._universe,
                tuple(sorted((a, tuple(sorted(s))) for a, s in self._labels.items())),
            )
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledStructure):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return (
            f"LabeledStructure(arity={self.arity}, elements={list(self.elements)}, "
            f"L={self._universe})"
        )

    def restrict(self, element_set: Iterable[ElementId]) -> "LabeledStructure":
        base = self._base.restrict(element_set)
        return LabeledStructure(base, {a: self._labels[a] for a in base.elements}, self._universe)

    def relabel(self, id_map: IdMap) -> "LabeledStructure":
        return LabeledStructure(
            self._base.relabel(id_map),
            {id_map[a]: s for a, s in self._labels.items()},
            self._universe,
        )

    def reduct(self) -> FiniteStructure:
        """Drop the labels."""
        return self._base


Structure = Union[FiniteStructure, LabeledStructure]


def same_signature(a: Structure, b: Structure) -> Optional[str]:
    """Describe why two structures cannot be compared, or return None if they can."""
    if a.arity != b.arity:
        return f"arity mismatch: {a.arity} != {b.arity}"
    if a.is_labeled != b.is_labeled:
        return "cannot compare a labeled structure with an unlabeled one"
    if a.is_labeled and a.universe != b.universe:
        return f"label universe mismatch: L={a.universe} != L={b.universe}"
    return None


class Embedding:
    """An injective element map between two structures.

    Construction does not certify the map; use ``structures.embeddings.is_embedding``.

    Args:
        source (Structure): Domain structure.
        target (Structure): Codomain structure.
        mapping (Mapping[int, int]): Element map defined on every source element.
    """

    __slots__ = ("source", "target", "mapping")

    def __init__(self, source: Structure, target: Structure, mapping: Mapping[ElementId, ElementId]):
        self.source = source
        self.target = target
        self.mapping: Dict[ElementId, ElementId] = dict(mapping)

    @classmethod
    def identity(cls, s: Structure) -> "Embedding":
        return cls(s, s, {a: a for a in s.elements})

    def __call__(self, a: ElementId) -> ElementId:
        return self.mapping[a]

    def image(self, elements: Optional[Iterable[ElementId]] = None) -> frozenset:
        """Image of the given source elements (all of them by default)."""
        if elements is None:
            return frozenset(self.mapping.values())
        return frozenset(self.mapping[a] for a in elements)

    def then(self, other: "Embedding") -> "Embedding":
        """Return ``other ∘ self``."""
        return Embedding(
            self.source,
            other.target,
            {a: other.mapping[b] for a, b in self.mapping.items()},
        )

    def is_identity(self) -> bool:
        return all(a == b for a, b in self.mapping.items())

    def pairs(self) -> Tuple[Tuple[ElementId, ElementId], ...]:
        """Sorted (source, target) pairs."""
        return tuple(sorted(self.mapping.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Embedding):
            return NotImplemented
        return (
            self.mapping == other.mapping
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self) -> int:
        return hash(self.pairs())

    def __repr__(self) -> str:
        return f"Embedding({dict(self.pairs())})"
