"""Domain package for lattice, spin and parameter types."""

from .entities import LatticeConfig, SearchParams, SpinRep, MIN_DIM, MAX_DIM
from .value_objects import (
    Branch,
    DispersionParams,
    MomentumVector,
    Observable,
    RepKind,
    SignConvention,
    Source,
)

__all__ = [
    "LatticeConfig",
    "SearchParams",
    "SpinRep",
    "MIN_DIM",
    "MAX_DIM",
    "Branch",
    "DispersionParams",
    "MomentumVector",
    "Observable",
    "RepKind",
    "SignConvention",
    "Source",
]
