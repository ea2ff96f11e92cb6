"""Utility package: error handling and file export."""

from .error_handling import (
    BracketError,
    CapacityError,
    ConfigurationError,
    ConvergenceError,
    DiracWalkError,
    DivergentIntegralError,
    ExportError,
    NoCriticalSolutionError,
    NumericalError,
    ResolventSingularError,
)

__all__ = [
    "BracketError",
    "CapacityError",
    "ConfigurationError",
    "ConvergenceError",
    "DiracWalkError",
    "DivergentIntegralError",
    "ExportError",
    "NoCriticalSolutionError",
    "NumericalError",
    "ResolventSingularError",
]
