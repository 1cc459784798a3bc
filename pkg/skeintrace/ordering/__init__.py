# Ordering Service
# Compatible and sane orderings of loop segments

"""
Ordering Service

Purpose: Solve the ordering problem for the loop segments of a curve
- Narrow regions, the regional graph and its component types
- Chain decomposition, orientations and dyadic weights
- Transfer to arc segments, arc-orderings and triangle-orderings
"""

from skeintrace.ordering.arc_orders import ArcOrdering, dyadic_arc_orderings, signed_sum_orderings, transfer
from skeintrace.ordering.chains import Chain, SeededPolicy, TieBreakPolicy, chain_decomposition, initial_chain_type_ii
from skeintrace.ordering.regional_graph import (
    ComponentType,
    RegionalGraph,
    build_regional_graph,
    classify_components,
)
from skeintrace.ordering.solver import OrderingSolution, solve_ordering, to_dot
from skeintrace.ordering.triangle_orders import check_compatibility_sanity, triangle_orderings
from skeintrace.ordering.weights import assign_orientations_weights, verify_sufficient_condition

__all__ = [
    "ArcOrdering",
    "Chain",
    "ComponentType",
    "OrderingSolution",
    "RegionalGraph",
    "SeededPolicy",
    "TieBreakPolicy",
    "assign_orientations_weights",
    "build_regional_graph",
    "chain_decomposition",
    "check_compatibility_sanity",
    "classify_components",
    "dyadic_arc_orderings",
    "initial_chain_type_ii",
    "signed_sum_orderings",
    "solve_ordering",
    "to_dot",
    "transfer",
    "triangle_orderings",
    "verify_sufficient_condition",
]
