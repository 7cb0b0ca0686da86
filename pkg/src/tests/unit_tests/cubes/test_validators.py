"""Unit tests for the validators module in the cubes package."""

import numpy as np
import pytest

from amalgamation.strategymgr import get_strategy
from cubes.validators import (
    is_reducible,
    labeled_containment_agrees,
    validate_cube,
    validate_disjoint,
    validate_disjoint_embedding,
)
from models.cube import CubeDiagram, CubeShape, CubeShapeError, DisjointEmbedding
from models.structure import Embedding, FiniteStructure, LabeledStructure
from sampledata.generators import random_partial_cube

# pylint: disable=redefined-outer-name


@pytest.fixture
def square(chain):
    """Full 2-cube whose two side faces have the same image in the top."""
    bottom = chain.restrict([0])
    inc = Embedding(bottom, chain, {0: 0})
    ident = Embedding.identity(chain)
    covers = {(0, 1): inc, (0, 2): inc, (1, 3): ident, (2, 3): ident}
    return CubeDiagram.from_covers(2, CubeShape.FULL, {0: bottom, 1: chain, 2: chain, 3: chain}, covers)


def interval(size):
    """1-cube from the empty BKL_2 structure into a structure with ``size`` (0 or 1) points."""
    empty = FiniteStructure.empty(2)
    top = get_strategy("bkl", 2).one_point_extensions(empty, 0)[0] if size else empty
    return CubeDiagram(
        1,
        CubeShape.FULL,
        {0: empty, 1: top},
        {(0, 0): Embedding.identity(empty), (1, 1): Embedding.identity(top), (0, 1): Embedding(empty, top, {})},
    )


def test_functorial_cube_passes(square):
    assert validate_cube(square).ok


def test_overlapping_images_break_disjointness(square):
    report = validate_disjoint(square)
    assert report.rules() == ["disjointness"]
    assert report.violations[0].witness == ((1, 2),)


def test_boundary_of_square_is_disjoint(square):
    assert validate_disjoint(square.restrict_to_boundary()).ok


def test_missing_face_is_structural(square):
    broken = CubeDiagram(2, CubeShape.FULL, {f: s for f, s in square.structures.items() if f != 2}, square.maps)
    report = validate_cube(broken)
    assert report.violations == ()
    assert [e.rule for e in report.structural_errors] == ["missing-face"]


def test_non_embedding_map_is_reported(square, chain):
    maps = dict(square.maps)
    maps[(1, 3)] = Embedding(chain, chain, {0: 1, 1: 0})
    report = validate_cube(CubeDiagram(2, CubeShape.FULL, square.structures, maps))
    assert "embedding" in report.rules()


def test_reducibility(square):
    assert is_reducible(square) == (1, 2)
    assert is_reducible(interval(1)) is None
    assert is_reducible(interval(0)) == (1, 0)


def test_reducibility_needs_full_cube(square):
    with pytest.raises(CubeShapeError):
        is_reducible(square.restrict_to_boundary())


def test_identity_disjoint_embedding_is_valid(square):
    assert validate_disjoint_embedding(DisjointEmbedding.identity(square)).ok


def test_disjoint_embedding_shape_mismatch(square):
    e = DisjointEmbedding(square, square.restrict_to_boundary(), {})
    assert [v.rule for v in validate_disjoint_embedding(e).structural_errors] == ["shape"]


def test_labeled_containment_agrees_on_amalgam():
    strategy = get_strategy("bkl", 2)
    p = random_partial_cube(strategy, 2, np.random.default_rng(5), extra=1)
    labels = {}
    code = 0
    structures = {}
    for sigma in p.faces():
        for a in p[sigma].elements:
            if a not in labels:
                code += 1
                labels[a] = {i for i in range(4) if code >> i & 1}
    for sigma in p.faces():
        structures[sigma] = LabeledStructure(p[sigma], labels, 4)
    maps = {
        pair: Embedding(structures[pair[0]], structures[pair[1]], e.mapping) for pair, e in p.maps.items()
    }
    labeled = CubeDiagram(2, CubeShape.BOUNDARY, structures, maps)
    full = strategy.amalgamate(labeled)
    assert labeled_containment_agrees(full).ok
