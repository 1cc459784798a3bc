# Lamination Service
# Curves and integral laminations in minimal position

"""
Lamination Service

Purpose: Represent good loops and integral laminations
- Corner counts, traversals, junctures and loop segments
- Complementary regions, peripherality and contractibility
- Normalization, disjointness and Fock coordinates
"""

from skeintrace.lamination.curve import (
    CurveOnSurface,
    Juncture,
    JunctureData,
    LoopSegment,
    TraversalStep,
    build_junctures,
    layout_junctures,
)
from skeintrace.lamination.lamination import (
    IntegralLamination,
    LaminationComponent,
    fock_coordinate,
    is_even,
    normalize_lamination,
)
from skeintrace.lamination.regions import complementary_regions, is_peripheral

__all__ = [
    "CurveOnSurface",
    "IntegralLamination",
    "Juncture",
    "JunctureData",
    "LaminationComponent",
    "LoopSegment",
    "TraversalStep",
    "build_junctures",
    "complementary_regions",
    "fock_coordinate",
    "is_even",
    "is_peripheral",
    "layout_junctures",
    "normalize_lamination",
]
