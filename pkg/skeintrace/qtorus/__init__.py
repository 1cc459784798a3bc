# Quantum Torus Service
# Exact noncommutative Laurent arithmetic

"""
Quantum Torus Service

Purpose: Exact arithmetic for quantum traces
- OmegaLaurent: integer Laurent polynomials in w
- QuantumTorus / QTElement: w-commuting generators in normal form
- Weyl ordering, positivity, classical specialization and X-forms
"""

from skeintrace.qtorus.commutative import (
    CommutativeLaurent,
    XForm,
    specialize_commutative,
    x_subalgebra_form,
)
from skeintrace.qtorus.laurent import OmegaLaurent
from skeintrace.qtorus.torus import (
    QTElement,
    QuantumTorus,
    is_positive,
    multiply,
    weyl_bracket,
)

__all__ = [
    "CommutativeLaurent",
    "OmegaLaurent",
    "QTElement",
    "QuantumTorus",
    "XForm",
    "is_positive",
    "multiply",
    "specialize_commutative",
    "weyl_bracket",
    "x_subalgebra_form",
]
