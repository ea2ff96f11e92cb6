"""DiracWalk: quantum-walk spatial search driven by a lattice Dirac Hamiltonian."""

__version__ = "1.0.0"
