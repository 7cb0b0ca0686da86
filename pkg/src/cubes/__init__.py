"""
Cubes package: validation of cube-shaped diagrams.

Modules:
    - `validators`: Functoriality, disjointness, reducibility, disjoint embeddings
      and the labelled image-containment check.

Face arithmetic and the diagram types themselves live in `models.cube`.
"""
