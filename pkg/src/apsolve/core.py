"""Grid, state, parameters, stiffness-factor algebra, and boundary handling.

Everything downstream (schemes, stability bounds, harness) builds on the small
value types defined here. All operations are pure: they return new objects and
never mutate their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

HHE = "hhe"
EULER = "euler"

PERIODIC = "periodic"
HYBRID = "hybrid"
ZERO_GRADIENT = "zero-gradient"


@dataclass(frozen=True)
class Grid1D:
    """Uniform 1D mesh with ghost layers on both sides.

    Cell j (0-based, interior) has center x_left + (j + 1/2)*dx; N cells tile
    [x_left, x_right] exactly.
    """

    x_left: float
    x_right: float
    n_cells: int
    n_ghost: int = 1

    def __post_init__(self) -> None:
        if not self.x_left < self.x_right:
            raise ValueError("domain must satisfy x_left < x_right")
        if self.n_cells < 1:
            raise ValueError("need at least one cell")
        if self.n_ghost not in (1, 2):
            raise ValueError("n_ghost must be 1 or 2")

    @property
    def dx(self) -> float:
        return (self.x_right - self.x_left) / self.n_cells

    @property
    def centers(self) -> np.ndarray:
        """Centers of the interior cells."""
        j = np.arange(self.n_cells)
        return self.x_left + (j + 0.5) * self.dx

    @property
    def centers_with_ghosts(self) -> np.ndarray:
        j = np.arange(-self.n_ghost, self.n_cells + self.n_ghost)
        return self.x_left + (j + 0.5) * self.dx

    @property
    def n_total(self) -> int:
        return self.n_cells + 2 * self.n_ghost

    @property
    def interior(self) -> slice:
        return slice(self.n_ghost, self.n_ghost + self.n_cells)


@dataclass
class State:
    """Per-cell conserved pair on a ghosted grid.

    field_a is E (hyperbolic heat) or rho (Euler-friction); field_b is F or
    rho*u. Arrays include ghost cells and have length grid.n_total.
    """

    kind: str
    field_a: np.ndarray
    field_b: np.ndarray
    grid: Grid1D
    time: float = 0.0

    def __post_init__(self) -> None:
        self.field_a = np.asarray(self.field_a)
        self.field_b = np.asarray(self.field_b)
        if self.field_a.shape != self.field_b.shape:
            raise ValueError("field arrays must have identical shape")
        if self.field_a.shape != (self.grid.n_total,):
            raise ValueError(
                f"fields must have length {self.grid.n_total} "
                f"(n_cells + 2*n_ghost), got {self.field_a.shape}"
            )

    @property
    def interior_a(self) -> np.ndarray:
        return self.field_a[self.grid.interior]

    @property
    def interior_b(self) -> np.ndarray:
        return self.field_b[self.grid.interior]

    def copy(self) -> "State":
        return State(
            kind=self.kind,
            field_a=self.field_a.copy(),
            field_b=self.field_b.copy(),
            grid=self.grid,
            time=self.time,
        )


def make_state(
    kind: str,
    grid: Grid1D,
    interior_a: np.ndarray,
    interior_b: np.ndarray,
    time: float = 0.0,
) -> State:
    """Build a State from interior data, ghost cells zero-initialized."""
    dtype = np.result_type(np.asarray(interior_a), np.asarray(interior_b), float)
    a = np.zeros(grid.n_total, dtype=dtype)
    b = np.zeros(grid.n_total, dtype=dtype)
    a[grid.interior] = interior_a
    b[grid.interior] = interior_b
    return State(kind=kind, field_a=a, field_b=b, grid=grid, time=time)


@dataclass(frozen=True)
class ModelParams:
    """Relaxation parameter, friction field, and (for Euler) the pressure law.

    sigma is sampled per cell on the ghosted grid; sigma_min/sigma_max are
    taken over the interior cells. Pressure law: p(rho) = C * rho**iota.
    """

    epsilon: float
    sigma: np.ndarray
    sigma_min: float
    sigma_max: float
    pressure_coeff: float = 1.0
    pressure_exponent: float = 1.0

    def __post_init__(self) -> None:
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if not np.all(np.asarray(self.sigma) > 0):
            raise ValueError("sigma must be positive everywhere")
        if not self.pressure_coeff > 0:
            raise ValueError("pressure coefficient must be positive")
        if not self.pressure_exponent >= 1:
            raise ValueError("pressure exponent must be >= 1")


def make_params(
    epsilon: float,
    sigma,
    grid: Grid1D,
    pressure_coeff: float = 1.0,
    pressure_exponent: float = 1.0,
) -> ModelParams:
    """Build ModelParams from a constant, an array, or a callable sigma."""
    if callable(sigma):
        sig = np.asarray(sigma(grid.centers_with_ghosts), dtype=float)
    elif np.isscalar(sigma):
        sig = np.full(grid.n_total, float(sigma))
    else:
        sig = np.asarray(sigma, dtype=float)
        if sig.shape != (grid.n_total,):
            raise ValueError("sigma array must cover the ghosted grid")
    interior = sig[grid.interior]
    return ModelParams(
        epsilon=float(epsilon),
        sigma=sig,
        sigma_min=float(interior.min()),
        sigma_max=float(interior.max()),
        pressure_coeff=pressure_coeff,
        pressure_exponent=pressure_exponent,
    )


@dataclass(frozen=True)
class StiffnessFactors:
    """Implicitness factors derived from x = sigma*dt/eps^2.

    Every factor lies in (0, 1]; all tend to 1 as x -> 0 and to 0 as
    x -> infinity (except none: M_half included). Fields may be scalars or
    per-cell arrays depending on what was passed in.
    """

    x: np.ndarray
    M: np.ndarray
    M_half: np.ndarray
    M1: np.ndarray
    M1p: np.ndarray
    M2: np.ndarray
    M2p: np.ndarray
    M_tilde: np.ndarray
    M_plus_plus: np.ndarray
    M_minus_plus: np.ndarray
    M3: np.ndarray


def compute_factors(sigma_j, dt: float, eps: float) -> StiffnessFactors:
    """Evaluate all implicitness factors for x = sigma_j*dt/eps^2.

    Accepts scalar or array sigma_j. For very large x (> 1e8) the rational
    forms are evaluated with numerator and denominator scaled by the dominant
    power so nothing overflows or loses the leading behavior.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    if dt < 0:
        raise ValueError("dt must be non-negative")
    sigma_j = np.asarray(sigma_j, dtype=float)
    if np.any(sigma_j < 0):
        raise ValueError("sigma must be non-negative")

    with np.errstate(over="ignore"):
        x = sigma_j * dt / eps**2
    if not np.all(np.isfinite(x)):
        raise ValueError("sigma*dt/eps^2 overflowed; parameters out of range")

    big = x > 1e8
    # Small/moderate lane: plain rational forms (big entries masked to a
    # harmless value so no overflow warnings fire in the unused lane).
    xm = np.where(big, 1.0, x)
    ym = xm / 2.0
    d1 = 1.0 + ym * (1.0 + ym)
    d2 = 1.0 + 2.0 * ym * (1.0 + ym)
    M = 1.0 / (1.0 + xm)
    M_half = 1.0 / (1.0 + ym)
    M1 = 1.0 / d1
    M1p = (1.0 + ym) / d1
    M2 = (1.0 + ym) / d2
    M2p = (1.0 + 2.0 * ym) / d2
    M3 = 1.0 / (1.0 + xm * (1.0 + ym))
    # Cancellation-free identity: (M1p - M2p)/2 = y^2/(2*d1*d2).
    M_minus_plus = ym**2 / (2.0 * d1 * d2)

    if np.any(big):
        # Large lane: numerator and denominator scaled by the dominant power
        # of x so the tiny factors keep their leading digits.
        xb = np.where(big, x, 1.0)
        yb = xb / 2.0
        inv_x = 1.0 / xb
        inv_y = 1.0 / yb
        e1 = inv_y**2 + inv_y + 1.0  # d1 / y^2
        e2 = inv_y**2 + 2.0 * inv_y + 2.0  # d2 / y^2
        M = np.where(big, inv_x / (inv_x + 1.0), M)
        M_half = np.where(big, inv_y / (inv_y + 1.0), M_half)
        M1 = np.where(big, inv_y**2 / e1, M1)
        M1p = np.where(big, (inv_y**2 + inv_y) / e1, M1p)
        M2 = np.where(big, (inv_y**2 + inv_y) / e2, M2)
        M2p = np.where(big, (inv_y**2 + 2.0 * inv_y) / e2, M2p)
        M3 = np.where(big, inv_x**2 / (inv_x**2 + inv_x + 0.5), M3)
        M_minus_plus = np.where(big, 0.5 * inv_y**2 / (e1 * e2), M_minus_plus)

    M_tilde = np.sqrt(M1 * M2)
    M_plus_plus = 0.5 * (M1p + M2p)

    factors = StiffnessFactors(
        x=x,
        M=M,
        M_half=M_half,
        M1=M1,
        M1p=M1p,
        M2=M2,
        M2p=M2p,
        M_tilde=M_tilde,
        M_plus_plus=M_plus_plus,
        M_minus_plus=M_minus_plus,
        M3=M3,
    )
    for name in ("M", "M_half", "M1", "M1p", "M2", "M2p", "M_tilde", "M_plus_plus", "M3"):
        if not np.all(np.isfinite(getattr(factors, name))):
            raise ValueError(f"stiffness factor {name} is non-finite; parameters out of range")
    return factors


@dataclass(frozen=True)
class BoundaryCondition:
    """Ghost-cell rule: periodic wrap, hybrid Dirichlet/Neumann, or copy.

    The hybrid kind imposes the value (a_left resp. a_right) on field_a at the
    boundary via reflection, and a zero normal derivative on field_b via copy.
    The zero-gradient kind copies the first/last interior cell into all ghosts.
    """

    kind: str
    a_left: float = 0.0
    a_right: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in (PERIODIC, HYBRID, ZERO_GRADIENT):
            raise ValueError(f"unknown boundary kind {self.kind!r}")
        if self.kind == HYBRID and not (
            np.isfinite(self.a_left) and np.isfinite(self.a_right)
        ):
            raise ValueError("hybrid boundary needs finite boundary values")


def periodic_bc() -> BoundaryCondition:
    return BoundaryCondition(kind=PERIODIC)


def hybrid_bc(a_left: float, a_right: float) -> BoundaryCondition:
    return BoundaryCondition(kind=HYBRID, a_left=a_left, a_right=a_right)


def zero_gradient_bc() -> BoundaryCondition:
    return BoundaryCondition(kind=ZERO_GRADIENT)


def _fill_ghosts(a: np.ndarray, b: np.ndarray, bc: BoundaryCondition, grid: Grid1D) -> None:
    """Fill ghost layers of both arrays in place."""
    ng = grid.n_ghost
    n = grid.n_cells
    if bc.kind == PERIODIC:
        for g in range(1, ng + 1):
            a[ng - g] = a[ng + n - g]
            a[ng + n - 1 + g] = a[ng - 1 + g]
            b[ng - g] = b[ng + n - g]
            b[ng + n - 1 + g] = b[ng - 1 + g]
    elif bc.kind == HYBRID:
        for g in range(1, ng + 1):
            a[ng - g] = 2.0 * bc.a_left - a[ng - 1 + g]
            a[ng + n - 1 + g] = 2.0 * bc.a_right - a[ng + n - g]
            b[ng - g] = b[ng - 1 + g]
            b[ng + n - 1 + g] = b[ng + n - g]
    else:  # zero-gradient
        for g in range(1, ng + 1):
            a[ng - g] = a[ng]
            a[ng + n - 1 + g] = a[ng + n - 1]
            b[ng - g] = b[ng]
            b[ng + n - 1 + g] = b[ng + n - 1]


def apply_boundary(state: State, bc: BoundaryCondition, grid: Grid1D | None = None) -> State:
    """Return a copy of the state with ghost cells filled per the rule."""
    grid = grid if grid is not None else state.grid
    if grid is not state.grid and grid != state.grid:
        raise ValueError("grid does not match the state's grid")
    out = state.copy()
    _fill_ghosts(out.field_a, out.field_b, bc, grid)
    return out


def to_invariants(state: State, weights: tuple = (1.0, 1.0)) -> tuple:
    """Diagonal variables u = a*A + b*B, v = a*A - b*B from the field pair.

    weights (1,1) gives the classic diagonalization; weights
    (sqrt(M2), sqrt(M1)) gives the tilde variables used by the second-order
    stability analysis. Arrays cover the full ghosted grid.
    """
    wa, wb = weights
    u = wa * state.field_a + wb * state.field_b
    v = wa * state.field_a - wb * state.field_b
    return u, v


def from_invariants(u: np.ndarray, v: np.ndarray, weights: tuple = (1.0, 1.0)) -> tuple:
    """Invert to_invariants: recover (field_a, field_b) from (u, v)."""
    wa, wb = weights
    a = (u + v) / (2.0 * wa)
    b = (u - v) / (2.0 * wb)
    return a, b


def norm(values: np.ndarray, grid: Grid1D, which: str) -> float:
    """Discrete norm over interior-cell values: 'linf' or 'l2' (dx-weighted)."""
    values = np.asarray(values)
    if values.size == 0:
        raise ValueError("cannot take the norm of an empty array")
    if which == "linf":
        return float(np.max(np.abs(values)))
    if which == "l2":
        return float(np.sqrt(np.sum(np.abs(values) ** 2) * grid.dx))
    raise ValueError(f"unknown norm kind {which!r}")
