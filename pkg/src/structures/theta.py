"""
The quantifier-free formula theta_A describing a finite structure A.

Variables x_0, ..., x_k stand for the elements of A in increasing id order.
theta_A is the conjunction of

- x_i != x_j for every pair of variables,
- R_{j_c}(c) for every n-tuple c of A,
- s_i(c) = d for every n-tuple c and every i <= j_c,

and, for labelled A, P_p(x_i) or not P_p(x_i) for every label index p < L.
A map a_i -> b_i satisfies theta_A in B exactly when it is an embedding.
"""

from dataclasses import dataclass
from typing import Mapping, Sequence, Tuple, Union

from models.structure import AssignmentError, StructureMismatchError, Structure
from models.types import Document, ElementId


@dataclass(frozen=True)
class Inequality:
    left: int
    right: int

    def render(self) -> str:
        return f"x{self.left} != x{self.right}"


@dataclass(frozen=True)
class RelationAtom:
    index: int
    args: Tuple[int, ...]

    def render(self) -> str:
        return f"R_{self.index}({_vars(self.args)})"


@dataclass(frozen=True)
class FunctionAtom:
    index: int
    args: Tuple[int, ...]
    value: int

    def render(self) -> str:
        return f"s_{self.index}({_vars(self.args)}) = x{self.value}"


@dataclass(frozen=True)
class LabelAtom:
    index: int
    var: int
    positive: bool

    def render(self) -> str:
        return f"{'' if self.positive else '!'}P_{self.index}(x{self.var})"


Atom = Union[Inequality, RelationAtom, FunctionAtom, LabelAtom]


def _vars(args: Sequence[int]) -> str:
    return ",".join(f"x{i}" for i in args)


@dataclass(frozen=True)
class ThetaFormula:
    """A conjunction of atoms over variables x_0, ..., x_k.

    Args:
        variables (tuple[int, ...]): The element of A each variable was read off.
        atoms (tuple[Atom, ...]): The conjuncts, in canonical order.
    """

    variables: Tuple[ElementId, ...]
    atoms: Tuple[Atom, ...]

    @property
    def arity(self) -> int:
        return len(self.variables)

    def is_truth(self) -> bool:
        """The empty conjunction."""
        return not self.atoms

    def render(self) -> str:
        return " & ".join(a.render() for a in self.atoms) if self.atoms else "true"

    def to_document(self) -> Document:
        atoms = []
        for atom in self.atoms:
            if isinstance(atom, Inequality):
                atoms.append({"kind": "neq", "vars": [atom.left, atom.right]})
            elif isinstance(atom, RelationAtom):
                atoms.append({"kind": "rel", "index": atom.index, "vars": list(atom.args)})
            elif isinstance(atom, FunctionAtom):
                atoms.append(
                    {"kind": "fn", "index": atom.index, "vars": list(atom.args), "value": atom.value}
                )
            else:
                atoms.append(
                    {"kind": "label", "index": atom.index, "var": atom.var, "positive": atom.positive}
                )
        return {"variables": list(self.variables), "atoms": atoms, "text": self.render()}


def theta(s: Structure) -> ThetaFormula:
    """
    Build theta_A for a finite (optionally labelled) structure.

    Args:
        s (Structure): The structure A.

    Returns:
        ThetaFormula: The characteristic conjunction of A.
    """
    position = {a: i for i, a in enumerate(s.elements)}
    size = len(s.elements)
    atoms = [Inequality(i, j) for i in range(size) for j in range(i + 1, size)]
    for t in s.tuples():
        entry = s.entry(t)
        args = tuple(position[a] for a in t)
        atoms.append(RelationAtom(entry.rel_index, args))
        atoms.extend(
            FunctionAtom(i, args, position[v]) for i, v in enumerate(entry.fn_values)
        )
    if s.is_labeled:
        for a in s.elements:
            labels = s.label_of(a)
            atoms.extend(
                LabelAtom(p, position[a], p in labels) for p in range(s.universe)
            )
    return ThetaFormula(tuple(s.elements), tuple(atoms))


def satisfies_theta(
    t: Structure,
    formula: ThetaFormula,
    assignment: Union[Mapping[int, ElementId], Sequence[ElementId]],
) -> bool:
    """
    Evaluate a theta formula in a structure under an assignment.

    Args:
        t (Structure): The structure the formula is evaluated in.
        formula (ThetaFormula): The formula.
        assignment (Mapping[int, int] | Sequence[int]): Element of ``t`` for each
            variable index.

    Returns:
        bool: True iff every conjunct holds.

    Raises:
        AssignmentError: If the assignment misses a variable or hits a non-element.
        StructureMismatchError: If the formula has label atoms and ``t`` is unlabelled.
    """
    if isinstance(assignment, Mapping):
        values = [assignment.get(i) for i in range(formula.arity)]
    else:
        values = list(assignment)
    if len(values) != formula.arity or any(v is None for v in values):
        raise AssignmentError(f"assignment must give a value to all {formula.arity} variables")
    stray = [v for v in values if v not in t]
    if stray:
        raise AssignmentError(f"assignment uses {stray}, which are not elements")

    for atom in formula.atoms:
        if isinstance(atom, Inequality):
            holds = values[atom.left] != values[atom.right]
        elif isinstance(atom, RelationAtom):
            holds = t.rel(tuple(values[i] for i in atom.args)) == atom.index
        elif isinstance(atom, FunctionAtom):
            args = tuple(values[i] for i in atom.args)
            holds = t.fn(atom.index, args) == values[atom.value]
        else:
            if not t.is_labeled:
                raise StructureMismatchError("label atoms need a labelled structure")
            holds = (atom.index in t.label_of(values[atom.var])) == atom.positive
        if not holds:
            return False
    return True
