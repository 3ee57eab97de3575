"""
Error types for ces-kit
Every failure carries the CLI exit code it maps to
"""

from typing import Any, Dict, Optional

# Exit-code contract shared by the CLI and the tool server
EXIT_OK = 0
EXIT_CERTIFICATION_FAILED = 1
EXIT_USAGE = 2


class CESKitError(Exception):
    """Base exception for ces-kit errors"""
    exit_code = EXIT_USAGE

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None,
                 exit_code: Optional[int] = None):
        self.message = message
        self.details = details or {}
        if exit_code is not None:
            self.exit_code = exit_code
        super().__init__(self.message)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error": type(self).__name__,
            "message": self.message,
            "details": self.details,
            "exit_code": self.exit_code,
        }


class DimsError(CESKitError):
    """Invalid local dimensions (k < 2, some d_j < 2, or D over the dense limit)"""


class SlotError(CESKitError):
    """Slot index out of range, repeated slot, or invalid bipartite cut"""


class ShapeError(CESKitError):
    """Vector or operator shape does not match the dimensions"""


class NotHermitianError(CESKitError):
    """Operator fails the entrywise Hermiticity tolerance"""


class ConvergenceError(CESKitError):
    """Iterative routine ran out of sweeps"""
    exit_code = EXIT_CERTIFICATION_FAILED


class BasisInvariantError(CESKitError):
    """A constructed or supplied basis violates a basis invariant"""
    exit_code = EXIT_CERTIFICATION_FAILED

    def __init__(self, message: str, failed_check: str, details: Optional[Dict[str, Any]] = None):
        self.failed_check = failed_check
        super().__init__(message, {**(details or {}), "failed_check": failed_check})


class HypothesisError(CESKitError):
    """Certificate inputs fall outside their valid range (for example negative weights)"""


class RangeError(CESKitError):
    """Operator range is not contained in the completely entangled subspace"""


class FixtureError(CESKitError):
    """Product-family fixture cannot be parsed or is not orthonormal"""
