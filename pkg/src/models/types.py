"""
Defines custom type annotations and aliases used throughout the application.

This module provides type definitions for element ids, tuples, faces of the
combinatorial cube, label sets and the JSON documents exchanged by the
command-line interface, enhancing code readability and maintainability.
"""

from typing import Any, Dict, FrozenSet, List, Tuple

# Structure Types

ElementId = int  # Global natural-number id of an element
NTuple = Tuple[ElementId, ...]  # An n-tuple of element ids (repetitions allowed)
IdMap = Dict[ElementId, ElementId]  # Element map underlying an embedding
LabelSet = FrozenSet[int]  # Label indices carried by one element
Labelling = Dict[ElementId, LabelSet]  # Label set per element

# Cube Types

Face = int  # Bitmask over {0, ..., k-1}
FacePair = Tuple[Face, Face]  # Ordered pair of faces (sigma, tau)

# Document Types

Document = Dict[str, Any]  # Parsed JSON document
DocumentList = List[Document]
