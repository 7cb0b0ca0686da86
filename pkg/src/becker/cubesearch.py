"""
Searching the embeddability digraph for induced combinatorial cubes.

A k-cube embeds when faces can be sent injectively to vertices so that,
for distinct faces sigma and tau, there is an arc image(sigma) -> image(tau)
exactly when sigma ⊆ tau. Faces are assigned in face order and vertices
tried in increasing order, so the first witness found is the
lexicographically least.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional

import pandas as pd

from becker.digraph import EmbeddabilityDigraph
from models.cube import face_label, faces, is_subface
from models.types import Document, Face, FacePair

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CubeWitness:
    """
    An induced copy of the combinatorial k-cube.

    Args:
        k (int): Cube dimension.
        assignment (dict[Face, int]): Vertex of each face.
        evidence (dict[tuple[int, int], bool]): Arc presence for every ordered
            pair of distinct faces.
    """

    k: int
    assignment: Dict[Face, int]
    evidence: Dict[FacePair, bool]

    def check(self, d: EmbeddabilityDigraph) -> bool:
        """Re-verify the induced condition against the digraph."""
        if len(set(self.assignment.values())) != len(self.assignment):
            return False
        for (sigma, tau), present in self.evidence.items():
            if d.has_arc(self.assignment[sigma], self.assignment[tau]) != present:
                return False
            if present != is_subface(sigma, tau):
                return False
        return True

    def to_document(self) -> Document:
        return {
            "k": self.k,
            "assignment": [
                {"face": sigma, "label": face_label(sigma), "vertex": v}
                for sigma, v in self.assignment.items()
            ],
        }


def find_cube_embedding(d: EmbeddabilityDigraph, k: int) -> Optional[CubeWitness]:
    """
    Find the first induced embedding of the combinatorial k-cube.

    Args:
        d (EmbeddabilityDigraph): The digraph.
        k (int): Cube dimension, at least 0.

    Returns:
        CubeWitness | None: The lexicographically first witness, or None.

    Raises:
        ValueError: If k is negative.
    """
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    order = faces(k)
    vertices = d.vertices
    if len(vertices) < len(order):
        return None
    assignment: Dict[Face, int] = {}
    used = set()

    def fits(tau: Face, v: int) -> bool:
        for sigma, u in assignment.items():
            if d.has_arc(u, v) != is_subface(sigma, tau):
                return False
            if d.has_arc(v, u) != is_subface(tau, sigma):
                return False
        return True

    def extend(level: int) -> bool:
        if level == len(order):
            return True
        tau = order[level]
        for v in vertices:
            if v in used or not fits(tau, v):
                continue
            assignment[tau] = v
            used.add(v)
            if extend(level + 1):
                return True
            used.discard(v)
            del assignment[tau]
        return False

    if not extend(0):
        logger.debug("no induced %d-cube among %d vertices", k, len(vertices))
        return None
    evidence = {
        (sigma, tau): d.has_arc(assignment[sigma], assignment[tau])
        for sigma in order
        for tau in order
        if sigma != tau
    }
    return CubeWitness(k, dict(assignment), evidence)


def dimension_estimate(d: EmbeddabilityDigraph, k_max: int) -> int:
    """
    Largest k <= k_max whose cube embeds; -1 for an empty digraph.

    The search stops at the first k without a witness, since a k-cube
    contains induced copies of every smaller cube.
    """
    if k_max < 0:
        raise ValueError(f"k_max must be non-negative, got {k_max}")
    best = -1
    for k in range(k_max + 1):
        if find_cube_embedding(d, k) is None:
            break
        best = k
    return best


def dimension_table(d: EmbeddabilityDigraph, k_max: int) -> pd.DataFrame:
    """One row per tested k with whether a witness was found and its vertices."""
    rows: List[dict] = []
    for k in range(k_max + 1):
        witness = find_cube_embedding(d, k)
        rows.append(
            {
                "k": k,
                "found": witness is not None,
                "vertices": None if witness is None else [witness.assignment[s] for s in faces(k)],
            }
        )
        if witness is None:
            break
    return pd.DataFrame(rows, columns=["k", "found", "vertices"])
