"""
The embeddability digraph of a finite family of structures.

Vertices are isomorphism-type representatives (first occurrence kept); an
arc u -> v records an embedding of structure(u) into structure(v), stored as
the ``embedding`` edge attribute. Every vertex carries a self-loop.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from itertools import product
from typing import Iterable, List, Optional, Sequence

import networkx as nx
from tqdm import tqdm

from helpers.settings import thread_count
from models.reports import ReportBuilder, ValidationReport
from models.structure import Embedding, Structure, same_signature
from models.types import Document
from structures.embeddings import embeds, is_isomorphic

logger = logging.getLogger(__name__)


class FamilyMismatchError(ValueError):
    """Raised when a family mixes arities or labelled and unlabelled structures."""


class EmbeddabilityDigraph:
    """
    Digraph on isomorphism types with an arc for every existing embedding.

    Args:
        graph (nx.DiGraph): Nodes 0..m-1 with a ``structure`` attribute.
        sources (list[int]): Index in the input family of each vertex's representative.
    """

    def __init__(self, graph: nx.DiGraph, sources: Sequence[int]) -> None:
        self.graph = graph
        self.sources = list(sources)

    def __len__(self) -> int:
        return self.graph.number_of_nodes()

    @property
    def vertices(self) -> List[int]:
        return sorted(self.graph.nodes)

    def structure(self, v: int) -> Structure:
        return self.graph.nodes[v]["structure"]

    def has_arc(self, u: int, v: int) -> bool:
        return self.graph.has_edge(u, v)

    def embedding(self, u: int, v: int) -> Optional[Embedding]:
        if not self.graph.has_edge(u, v):
            return None
        return self.graph.edges[u, v]["embedding"]

    def arcs(self) -> List[tuple]:
        """Arcs other than the self-loops, sorted."""
        return sorted((u, v) for u, v in self.graph.edges if u != v)

    def to_document(self) -> Document:
        return {
            "vertices": [
                {"id": v, "source": self.sources[v], "size": len(self.structure(v))} for v in self.vertices
            ],
            "arcs": [list(a) for a in self.arcs()],
        }


def _check_family(family: Sequence[Structure]) -> None:
    for s in family[1:]:
        problem = same_signature(family[0], s)
        if problem is not None:
            raise FamilyMismatchError(f"family mixes structures: {problem}")


def deduplicate(family: Sequence[Structure]) -> List[int]:
    """Indices of the first member of every isomorphism class, in input order."""
    kept: List[int] = []
    for i, s in enumerate(family):
        if not any(is_isomorphic(s, family[j]) is not None for j in kept):
            kept.append(i)
    return kept


def build_digraph(
    family: Iterable[Structure],
    threads: Optional[int] = None,
    progress: bool = False,
) -> EmbeddabilityDigraph:
    """
    Build the embeddability digraph of a family.

    Args:
        family (Iterable[Structure]): Structures of one arity and labelling.
        threads (int, optional): Worker threads for the arc tests; defaults to
            ``CUBE_AMALGAM_THREADS``.
        progress (bool): Show a progress bar over the arc tests.

    Returns:
        EmbeddabilityDigraph: Reflexive and transitive by construction.

    Raises:
        FamilyMismatchError: If the family mixes arities, labelled and
            unlabelled structures or label universes.
    """
    family = list(family)
    if family:
        _check_family(family)
    kept = deduplicate(family)
    graph = nx.DiGraph()
    for v, i in enumerate(kept):
        graph.add_node(v, structure=family[i])

    pairs = list(product(range(len(kept)), repeat=2))

    def test(pair):
        u, v = pair
        return embeds(family[kept[u]], family[kept[v]])

    workers = threads or thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(tqdm(pool.map(test, pairs), total=len(pairs), desc="Testing arcs", disable=not progress))
    else:
        results = [test(p) for p in tqdm(pairs, desc="Testing arcs", disable=not progress)]

    for (u, v), emb in zip(pairs, results):
        if emb is not None:
            graph.add_edge(u, v, embedding=emb)
    logger.info("digraph on %d vertices (from %d structures) with %d arcs", len(kept), len(family), graph.number_of_edges())
    return EmbeddabilityDigraph(graph, kept)


def check_digraph(d: EmbeddabilityDigraph) -> ValidationReport:
    """Check reflexivity and transitivity exhaustively."""
    report = ReportBuilder()
    vertices = d.vertices
    for v in vertices:
        if not d.has_arc(v, v):
            report.violation("reflexive", f"vertex {v} has no self-loop", v)
    for u, v, w in product(vertices, repeat=3):
        if d.has_arc(u, v) and d.has_arc(v, w) and not d.has_arc(u, w):
            report.violation("transitive", f"arcs {u}->{v}->{w} without {u}->{w}", u, v, w)
    return report.build()


def digraph_to_dot(d: EmbeddabilityDigraph, name: str = "embeddability") -> str:
    """DOT rendering without self-loops, one line per vertex and arc."""
    lines = [f"digraph {name} {{"]
    for v in d.vertices:
        lines.append(f'  {v} [label="{v} ({len(d.structure(v))})"];')
    for u, v in d.arcs():
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
