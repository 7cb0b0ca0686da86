"""
Models package for type definitions and data structures.

This package contains the value types shared by every other package, helping
to ensure consistency and clarity in how structures and cubes are handled.

Modules:
    - `types`: Type aliases for element ids, tuples, faces and documents.
    - `structure`: Finite structures, labeled structures, tuple entries and embeddings.
    - `cube`: Faces of the combinatorial cube, cube diagrams and disjoint embeddings.
    - `reports`: Validation reports returned by every validator.
"""
