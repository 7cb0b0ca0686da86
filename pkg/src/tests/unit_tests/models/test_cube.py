"""Unit tests for the cube module in the models package."""

import pytest

from models.cube import (
    CubeDiagram,
    CubeShape,
    CubeShapeError,
    DisjointEmbedding,
    boundary_faces,
    face_from_members,
    face_label,
    face_members,
    faces,
    full_face,
    is_subface,
    ordered_pairs_not_contained,
    subfaces,
)
from models.structure import Embedding, FiniteStructure

# pylint: disable=redefined-outer-name


def test_faces_are_ordered_by_size_then_mask():
    assert faces(0) == [0]
    assert faces(2) == [0, 1, 2, 3]
    assert faces(3) == [0, 1, 2, 4, 3, 5, 6, 7]


def test_boundary_faces_omit_the_top():
    assert boundary_faces(2) == [0, 1, 2]
    assert full_face(3) not in boundary_faces(3)


def test_faces_out_of_range():
    with pytest.raises(CubeShapeError):
        faces(17)
    with pytest.raises(CubeShapeError):
        CubeDiagram(-1, CubeShape.FULL, {}, {})


def test_face_helpers():
    assert subfaces(5) == [0, 1, 4, 5]
    assert face_members(6) == (1, 2)
    assert face_from_members([0, 2]) == 5
    assert face_label(0) == "∅"
    assert face_label(5) == "{0,2}"
    assert is_subface(1, 3) and not is_subface(3, 1)


def test_ordered_pairs_not_contained():
    assert ordered_pairs_not_contained(1) == [(1, 0)]
    assert len(ordered_pairs_not_contained(2)) == 16 - 9


@pytest.fixture
def square(chain):
    """2-cube with A_∅ = {0}, A_{0} = A_{1} = A_{01} = chain."""
    bottom = chain.restrict([0])
    inc = Embedding(bottom, chain, {0: 0})
    ident = Embedding.identity(chain)
    covers = {(0, 1): inc, (0, 2): inc, (1, 3): ident, (2, 3): ident}
    return CubeDiagram.from_covers(2, CubeShape.FULL, {0: bottom, 1: chain, 2: chain, 3: chain}, covers)


def test_from_covers_composes(square):
    assert square.map(0, 3).mapping == {0: 0}
    assert square.map(1, 1).is_identity()
    assert square.image(1) == frozenset({0, 1})
    assert square.size() == 7


def test_missing_map_raises(square):
    with pytest.raises(CubeShapeError):
        square.map(3, 0)


def test_restrict_to_boundary(square):
    p = square.restrict_to_boundary()
    assert p.shape is CubeShape.BOUNDARY
    assert p.faces() == [0, 1, 2]
    assert 3 not in p.structures
    assert all(pair[1] != 3 for pair in p.maps)


def test_equality(square):
    assert square != square.restrict_to_boundary()
    empty = FiniteStructure.empty(1)
    one = CubeDiagram(0, CubeShape.FULL, {0: empty}, {(0, 0): Embedding.identity(empty)})
    assert one == CubeDiagram(0, "full", {0: empty}, {(0, 0): Embedding.identity(empty)})


def test_disjoint_embedding_identity_then(square):
    e = DisjointEmbedding.identity(square)
    assert all(e[f].is_identity() for f in square.faces())
    assert all(e.then(e)[f].is_identity() for f in square.faces())
