# Skein Trace Engine
# Exact quantum traces of laminations on triangulated surfaces

"""
Skein Trace Engine

Purpose: Compute quantum traces of integral laminations on ideally
triangulated surfaces and certify their Laurent positivity
- Combinatorial surfaces, curves and laminations
- Loop-segment ordering via the regional graph and chain decomposition
- Exact arithmetic in the square-root quantum torus
- State-sum and frontier evaluation of the trace
"""

PACKAGE_NAME = "skeintrace"
PACKAGE_VERSION = "1.0.0"
PYTHON_VERSION = "3.12.10"

__all__ = ["PACKAGE_NAME", "PACKAGE_VERSION", "PYTHON_VERSION"]
