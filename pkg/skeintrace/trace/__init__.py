# Trace Service
# Quantum traces of curves and Allegretti-Kim elements of laminations

"""
Trace Service

Purpose: Evaluate quantum traces on a triangulated surface
- Triangle factors, triangle products and biangle values
- State-sum and transfer engines over juncture signs
- Chebyshev and peripheral cases, classical oracle, invariance harness
"""

from skeintrace.trace.allegretti_kim import (
    TraceOptions,
    TraceResult,
    allegretti_kim,
    check_choice_independence,
    classical_oracle,
    peripheral_element,
)
from skeintrace.trace.chebyshev import chebyshev_F, evaluate_chebyshev
from skeintrace.trace.engines import quantum_trace, quantum_trace_transfer_matrix
from skeintrace.trace.local import BiangleDiagram, biangle_value, triangle_factor, triangle_product

__all__ = [
    "BiangleDiagram",
    "TraceOptions",
    "TraceResult",
    "allegretti_kim",
    "biangle_value",
    "chebyshev_F",
    "check_choice_independence",
    "classical_oracle",
    "evaluate_chebyshev",
    "peripheral_element",
    "quantum_trace",
    "quantum_trace_transfer_matrix",
    "triangle_factor",
    "triangle_product",
]
