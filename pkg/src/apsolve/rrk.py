"""Reverse Runge-Kutta integrators for stiff affine-linear sources.

The order-2 family is built by running a classical explicit RK step backwards
from the endpoint, which yields an implicit method whose stability function is
the reciprocal of the explicit one: R*(z) = 1/(1 - z + z^2/2). It is A- and
L-stable and stiffly accurate, and for an affine right-hand side
f(U) = L U + g the update reduces to a single linear solve.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RRKMethod:
    """Reverse RK method of order 1 (backward Euler) or 2 (one-parameter family)."""

    order: int
    alpha: float = 0.5

    def __post_init__(self) -> None:
        if self.order not in (1, 2):
            raise ValueError("order must be 1 or 2")
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError("alpha must lie in (0, 1]")

    @property
    def butcher(self) -> tuple:
        """(A, b, c) of the order-2 family; the last stage weights equal b."""
        if self.order != 2:
            raise ValueError("Butcher array defined for order 2 only")
        a = self.alpha
        w1 = 1.0 / (2.0 * a)
        A = np.array([[w1, 1.0 - w1 - a], [w1, 1.0 - w1]])
        b = np.array([w1, 1.0 - w1])
        c = np.array([1.0 - a, 1.0])
        return A, b, c


def rrk_step_affine(method: RRKMethod, L, g, U, dt: float):
    """One reverse-RK step for U' = L U + g with L a scalar or square matrix.

    Order 1 solves (I - dt L) U1 = U + dt g. Order 2 solves
    (I - dt L + dt^2/2 L^2) U1 = U + dt g - dt^2/2 L g; the family parameter
    alpha cancels for affine right-hand sides.
    """
    U = np.asarray(U, dtype=float)
    scalar_L = np.isscalar(L) or np.ndim(L) == 0
    if scalar_L:
        lam = float(L)
        if method.order == 1:
            denom = 1.0 - dt * lam
            if denom == 0.0:
                raise ValueError("singular implicit solve")
            return (U + dt * np.asarray(g)) / denom
        denom = 1.0 - dt * lam + 0.5 * (dt * lam) ** 2
        if denom == 0.0:
            raise ValueError("singular implicit solve")
        rhs = U + dt * np.asarray(g) - 0.5 * dt**2 * lam * np.asarray(g)
        return rhs / denom

    L = np.asarray(L, dtype=float)
    eye = np.eye(L.shape[0])
    g = np.asarray(g, dtype=float)
    if method.order == 1:
        mat = eye - dt * L
        rhs = U + dt * g
    else:
        mat = eye - dt * L + 0.5 * dt**2 * (L @ L)
        rhs = U + dt * g - 0.5 * dt**2 * (L @ g)
    try:
        return np.linalg.solve(mat, rhs)
    except np.linalg.LinAlgError as exc:
        raise ValueError("singular implicit solve") from exc


def rrk2_stability_function(z, alpha: float = 0.5):
    """R*(z) = 1/(1 - z + z^2/2): the order-2 reverse-RK amplification factor.

    Independent of alpha for linear problems; the argument is kept so call
    sites document which family member they use.
    """
    z = np.asarray(z, dtype=complex)
    denom = 1.0 - z + 0.5 * z * z
    if np.any(denom == 0.0):
        raise ValueError("evaluation at a pole of the stability function")
    out = 1.0 / denom
    if out.ndim == 0:
        return complex(out)
    return out
