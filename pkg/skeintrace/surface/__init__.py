# Surface Service
# Decorated surfaces and their ideal triangulations

"""
Surface Service

Purpose: Combinatorial model of a decorated surface with an ideal triangulation
- Gluing involution, arc ids and self-folded triangles
- Vertex classes, boundary circles and the Euler check
- The epsilon matrix of corner counts
"""

from skeintrace.surface.triangulation import (
    Corner,
    DecoratedSurface,
    Side,
    TaggedCorner,
    Triangulation,
    VertexClass,
    next_slot,
)

__all__ = [
    "Corner",
    "DecoratedSurface",
    "Side",
    "TaggedCorner",
    "Triangulation",
    "VertexClass",
    "next_slot",
]
