#!/usr/bin/env python3
"""
Skein Trace Error Hierarchy

Every failure is classified as either a user-input problem or a breach of a
property that the underlying theorems guarantee. The CLI maps each class to a
distinct exit code.
"""

from enum import Enum
from typing import Any, Dict, List, Optional


class ErrorCategory(Enum):
    """Error classification categories"""
    USER_INPUT = "user_input"
    INTERNAL_INVARIANT = "internal_invariant"
    UNEXPECTED = "unexpected"


class SkeinTraceError(Exception):
    """Base class for all engine errors"""

    category = ErrorCategory.UNEXPECTED
    exit_code = 1

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_report(self) -> Dict[str, Any]:
        """Machine-readable error report"""
        return {
            "status": "error",
            "category": self.category.value,
            "error_type": type(self).__name__,
            "exit_code": self.exit_code,
            "message": self.message,
            "details": self.details,
        }


class InputError(SkeinTraceError):
    """Rejected user input"""

    category = ErrorCategory.USER_INPUT
    exit_code = 2


class SchemaError(InputError):
    """Input document does not conform to its JSON schema"""


class TriangulationError(InputError):
    """Triangulation violates its structural invariants"""

    def __init__(self, message: str, violations: Optional[List[str]] = None):
        super().__init__(message, {"violations": list(violations or [])})
        self.violations = list(violations or [])


class CurveError(InputError):
    """Curve is not a valid simple closed curve in minimal position"""


class LaminationError(InputError):
    """Lamination violates weight or disjointness rules"""


class InternalInvariantError(SkeinTraceError):
    """A property guaranteed by theory failed; indicates a bug"""

    category = ErrorCategory.INTERNAL_INVARIANT
    exit_code = 3

    def __init__(self, invariant: str, message: str, witness: Any = None):
        super().__init__(message, {"invariant": invariant, "witness": witness})
        self.invariant = invariant
        self.witness = witness
