"""Exception hierarchy for the berkcrucial toolkit."""

from __future__ import annotations

from typing import Any, Dict, Optional


class BerkCrucialError(Exception):
    """Base error; carries the offending object in JSON-ready form."""

    def __init__(self, message: str, payload: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(message)
        self.payload = payload or {}

    def as_dict(self) -> Dict[str, Any]:
        return {"error": type(self).__name__, "message": str(self), "payload": self.payload}


class NotIntegral(BerkCrucialError):
    """Residue requested for an element of negative valuation."""


class UnsupportedExtension(BerkCrucialError):
    """The computation needs a field outside the towers Q_p(p^(1/e))."""


class UnsupportedResidueExtension(UnsupportedExtension):
    """A residual factor is irreducible of degree > 1 over F_p."""


class UnsupportedRamification(UnsupportedExtension):
    """A root cluster needs a ramification index above the policy ceiling."""


class NonSeparable(BerkCrucialError):
    """Repeated-root refinement failed to separate a cluster."""


class CertificationFailed(BerkCrucialError):
    """A computed image point failed the seminorm identity."""


class UnsupportedPointType(BerkCrucialError):
    """Type III and IV points have no exact representation."""


class DegreeCapExceeded(BerkCrucialError):
    """Iterate degree exceeds the configured cap."""


class PrecisionExhausted(BerkCrucialError):
    """Root clusters could not be separated within the precision ceiling."""


class DegenerateMap(BerkCrucialError):
    """The homogeneous lift has vanishing resultant."""


class InvalidMeasure(BerkCrucialError):
    """A measure violates a precondition (e.g. barycenter of a non-probability)."""


class IdentityViolation(BerkCrucialError):
    """Two independent computations of the same quantity disagree."""


__all__ = [
    "BerkCrucialError",
    "NotIntegral",
    "UnsupportedExtension",
    "UnsupportedResidueExtension",
    "UnsupportedRamification",
    "NonSeparable",
    "CertificationFailed",
    "UnsupportedPointType",
    "DegreeCapExceeded",
    "PrecisionExhausted",
    "DegenerateMap",
    "InvalidMeasure",
    "IdentityViolation",
]
