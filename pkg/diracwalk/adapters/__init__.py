"""Adapters package for numerical back-ends."""

from .quadrature_adapter import SobolIntegrator, TensorProductIntegrator, integrator_for
from .propagator_adapter import DensePropagator, LanczosPropagator

__all__ = [
    "SobolIntegrator",
    "TensorProductIntegrator",
    "integrator_for",
    "DensePropagator",
    "LanczosPropagator",
]
