"""
This package contains the dimension tools:

- `digraph`: the embeddability digraph of a finite family of structures.
- `cubesearch`: induced cube embeddings and the dimension estimate.
- `sampling`: label patterns and generic labelled samples.
- `plotting`: Plotly figures of a digraph.
"""
