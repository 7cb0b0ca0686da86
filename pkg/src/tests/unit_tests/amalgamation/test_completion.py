"""Unit tests for the completion module in the amalgamation package."""

from itertools import product

import numpy as np
import pytest

from amalgamation.errors import AmalgamationPreconditionError, AmalgamationRefused, LabelCollisionError
from amalgamation.completion import bkl_fill_entry, complete_bkl, complete_colimit
from amalgamation.sharpness import canonical_failure_cube, empty_face_absorption
from amalgamation.strategymgr import get_strategy
from cubes.validators import validate_disjoint
from models.cube import CubeDiagram, CubeShape
from models.structure import Embedding, LabeledStructure, TupleEntry
from sampledata.generators import random_partial_cube
from structures.validation import validate_bkl

# pylint: disable=redefined-outer-name


@pytest.fixture
def corner(chain):
    bottom = chain.restrict([0])
    inc = Embedding(bottom, chain, {0: 0})
    return CubeDiagram.from_covers(
        2, CubeShape.BOUNDARY, {0: bottom, 1: chain, 2: chain}, {(0, 1): inc, (0, 2): inc}
    )


def test_fill_entry_generates_everything():
    assert bkl_fill_entry((4, 7), (2, 4, 7)) == TupleEntry(2, (2, 4, 7))


def test_generic_colimit_of_two_chains_breaks_b3(corner):
    """Two 1-point extensions over a common point leave {3, 4} independent in BKL_1."""
    full = complete_colimit(corner, bkl_fill_entry, 1)
    top = full[full.top]
    assert top.elements == (2, 3, 4)
    assert top.entry((3,)) == TupleEntry(1, (3, 2))
    assert top.entry((4,)) == TupleEntry(1, (4, 2))
    assert validate_bkl(top).rules() == ["B3"]
    assert validate_disjoint(full).ok


@pytest.mark.parametrize("n,k", [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3)])
def test_amalgam_is_a_disjoint_completion(n, k):
    """The amalgam is a BKL_n structure, the cube is disjoint and its boundary is the input.

    Full n-cubes also absorb the bottom face.
    """
    strategy = get_strategy("bkl", n)
    rng = np.random.default_rng(100 * n + k)
    for _ in range(100):
        p = random_partial_cube(strategy, k, rng)
        full = complete_bkl(p, n)
        assert full.shape is CubeShape.FULL
        assert validate_bkl(full[full.top]).ok
        assert validate_disjoint(full).ok
        assert full.restrict_to_boundary() == p
        if k == n:
            assert empty_face_absorption(full) == []


def test_uncovered_tuples_take_the_fill_rule():
    strategy = get_strategy("bkl", 2)
    p = random_partial_cube(strategy, 2, np.random.default_rng(8), extra=2)
    full = complete_bkl(p, 2)
    top = full[full.top]
    covered = set()
    for sigma in p.faces():
        covered.update(product(sorted(full.image(sigma)), repeat=2))
    for t in top.tuples():
        if t not in covered:
            assert top.entry(t) == bkl_fill_entry(t, top.elements)


def test_bkl_refuses_k_above_n():
    with pytest.raises(AmalgamationRefused, match="k <= 2"):
        complete_bkl(canonical_failure_cube(2), 2)
    with pytest.raises(AmalgamationRefused, match="k <= 2"):
        get_strategy("bkl", 2).amalgamate(canonical_failure_cube(2))


def test_invalid_face_is_a_precondition_error(free_pair):
    p = CubeDiagram(1, CubeShape.BOUNDARY, {0: free_pair}, {(0, 0): Embedding.identity(free_pair)})
    with pytest.raises(AmalgamationPreconditionError, match="B3"):
        complete_bkl(p, 1)
    assert complete_bkl(p, 1, check=False).shape is CubeShape.FULL


def test_arity_mismatch_is_a_precondition_error(corner):
    with pytest.raises(AmalgamationPreconditionError):
        complete_colimit(corner, bkl_fill_entry, 2)


def _labeled_corner(first, second):
    strategy = get_strategy("bkl", 2)
    empty = LabeledStructure.empty(2, 2)
    a = LabeledStructure(strategy.one_point_extensions(empty.base, 0)[0], {0: first}, 2)
    b = LabeledStructure(strategy.one_point_extensions(empty.base, 1)[0], {1: second}, 2)
    return CubeDiagram.from_covers(
        2,
        CubeShape.BOUNDARY,
        {0: empty, 1: a, 2: b},
        {(0, 1): Embedding(empty, a, {}), (0, 2): Embedding(empty, b, {})},
    )


def test_labels_are_transported():
    full = complete_bkl(_labeled_corner({0}, {1}), 2)
    top = full[full.top]
    assert top.is_labeled
    assert [top.label_of(a) for a in top.elements] == [frozenset({0}), frozenset({1})]
    assert validate_bkl(top.base).ok


def test_label_collision():
    with pytest.raises(LabelCollisionError):
        complete_bkl(_labeled_corner({1}, {1}), 2)
