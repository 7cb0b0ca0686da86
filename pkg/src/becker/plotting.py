"""
Plotly rendering of an embeddability digraph.

Vertices are placed with a seeded spring layout so the figure is the same on
every run; arcs are drawn as line segments with an arrow annotation.
"""

from typing import Dict, Tuple

import networkx as nx
import plotly.graph_objects as go

from becker.digraph import EmbeddabilityDigraph


def layout(d: EmbeddabilityDigraph, seed: int = 0) -> Dict[int, Tuple[float, float]]:
    if len(d) == 0:
        return {}
    positions = nx.spring_layout(d.graph, seed=seed)
    return {v: (float(x), float(y)) for v, (x, y) in positions.items()}


def digraph_figure(d: EmbeddabilityDigraph, title: str = "Embeddability digraph", seed: int = 0) -> go.Figure:
    """
    Create a Plotly figure of the digraph without its self-loops.

    Args:
        d (EmbeddabilityDigraph): The digraph.
        title (str): Figure title.
        seed (int): Seed of the spring layout.

    Returns:
        go.Figure: Nodes labelled with vertex id and structure size.
    """
    positions = layout(d, seed)
    fig = go.Figure()
    for u, v in d.arcs():
        (x0, y0), (x1, y1) = positions[u], positions[v]
        fig.add_annotation(
            x=x1, y=y1, ax=x0, ay=y0,
            xref="x", yref="y", axref="x", ayref="y",
            showarrow=True, arrowhead=2, arrowwidth=1, opacity=0.6,
        )
    vertices = d.vertices
    fig.add_trace(
        go.Scatter(
            x=[positions[v][0] for v in vertices],
            y=[positions[v][1] for v in vertices],
            mode="markers+text",
            text=[str(v) for v in vertices],
            textposition="top center",
            hovertext=[f"vertex {v}: {len(d.structure(v))} elements" for v in vertices],
            marker={"size": 14},
        )
    )
    fig.update_layout(
        title=title,
        showlegend=False,
        xaxis={"visible": False},
        yaxis={"visible": False},
        template="plotly_white",
    )
    return fig


def write_figure(fig: go.Figure, path: str) -> None:
    """Write a standalone HTML file."""
    fig.write_html(path, include_plotlyjs="cdn", full_html=True)
