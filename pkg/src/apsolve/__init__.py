"""Finite-volume solvers for 1D hyperbolic relaxation systems.

Implicit-explicit schemes (first and second order) for the hyperbolic heat
equation and the barotropic Euler system with friction, uniformly stable with
respect to the relaxation parameter, together with their admissible-timestep
calculators, reverse Runge-Kutta integrators, reference solutions, and a run
harness with a command-line front end.
"""

from apsolve.core import (
    BoundaryCondition,
    Grid1D,
    ModelParams,
    State,
    StiffnessFactors,
    apply_boundary,
    compute_factors,
    from_invariants,
    norm,
    to_invariants,
)

__all__ = [
    "BoundaryCondition",
    "Grid1D",
    "ModelParams",
    "State",
    "StiffnessFactors",
    "apply_boundary",
    "compute_factors",
    "from_invariants",
    "norm",
    "to_invariants",
]

__version__ = "0.1.0"
