"""Admissible-timestep bounds and Fourier amplification matrices.

Closed-form bounds come from convex-combination (l-inf) and energy (l2)
arguments; each dt_max is the exact positive root of a quadratic in dt. The
second-order scheme's l-inf interval also has a numerically refined variant
that solves the exact per-wavenumber conditions with the full implicitness
factors instead of their conservative envelopes.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from apsolve.core import compute_factors

UPWIND = "upwind"
IMEX1_CTR = "imex1-ctr"
IMEX1_UPWD = "imex1-upwd"
IMEX1_ITR = "imex1-itr"
IMEX2_CTR = "imex2-ctr"
IMEX2_MINMOD = "imex2-minmod"
EF_IMEX1 = "ef-imex1"
EF_IMEX2 = "ef-imex2"
MH_STRANG = "mh-strang"

LINEAR_SCHEMES = (UPWIND, IMEX1_CTR, IMEX1_UPWD, IMEX1_ITR, IMEX2_CTR, IMEX2_MINMOD)
EULER_SCHEMES = (EF_IMEX1, EF_IMEX2, MH_STRANG)


@dataclass(frozen=True)
class TimestepBounds:
    """Admissible interval [dt_min, dt_max]; dt_min = 0 when one-sided."""

    dt_min: float
    dt_max: float
    scheme_id: str
    norm_kind: str

    def __post_init__(self) -> None:
        if not self.dt_max > 0:
            raise ValueError("dt_max must be positive")


def _root_one_plus_sqrt(sigma: float, dx: float, eps: float, lead: float, inner: float) -> float:
    """dt = (sigma*dx^2/lead) * (1 + sqrt(1 + inner*(eps/(sigma*dx))^2))."""
    r = eps / (sigma * dx)
    return sigma * dx**2 / lead * (1.0 + np.sqrt(1.0 + inner * r * r))


def dt_bounds(
    scheme_id: str,
    norm_kind: str,
    eps: float,
    sigma_min: float,
    sigma_max: float,
    dx: float,
    u_max: float = 0.0,
    c: float = 1.0,
    printed_variant: bool = False,
) -> TimestepBounds:
    """Closed-form admissible-timestep bounds for a (scheme, norm) pair.

    The quadratic-root dt_max formulas increase with sigma, so they are
    evaluated at sigma_min (admissible for every cell); lower bounds use
    sigma_max for the same reason, and the upwind bound (decreasing in sigma)
    uses sigma_max. The interior-trajectory variants of a scheme inherit the
    parent scheme's bounds; the nonlinear ImEx schemes use the bounds of their
    linearization for l2 and the density-positivity root for 'positivity'.
    """
    if not (eps > 0 and sigma_min > 0 and sigma_max >= sigma_min and dx > 0):
        raise ValueError("eps, sigma_min <= sigma_max, dx must be positive")
    if u_max < 0 or c < 0:
        raise ValueError("u_max and c must be non-negative")

    if scheme_id == IMEX1_ITR:
        inner = dt_bounds(IMEX1_CTR, norm_kind, eps, sigma_min, sigma_max, dx, u_max, c)
        return TimestepBounds(inner.dt_min, inner.dt_max, scheme_id, norm_kind)
    if scheme_id == IMEX2_MINMOD:
        inner = dt_bounds(
            IMEX2_CTR, norm_kind, eps, sigma_min, sigma_max, dx, u_max, c, printed_variant
        )
        return TimestepBounds(inner.dt_min, inner.dt_max, scheme_id, norm_kind)

    if scheme_id == UPWIND and norm_kind == "l2":
        return TimestepBounds(
            0.0, eps**2 * dx / (eps + sigma_max * dx), scheme_id, norm_kind
        )

    if scheme_id == IMEX1_CTR and norm_kind == "linf":
        dt_max = _root_one_plus_sqrt(sigma_min, dx, eps, 8.0, 32.0)
        return TimestepBounds(eps * dx / 2.0, dt_max, scheme_id, norm_kind)
    if scheme_id == IMEX1_CTR and norm_kind == "l2":
        dt_max = _root_one_plus_sqrt(sigma_min, dx, eps, 8.0, 16.0)
        return TimestepBounds(0.0, dt_max, scheme_id, norm_kind)

    if scheme_id == IMEX1_UPWD and norm_kind == "linf":
        w = eps / (sigma_min * dx)
        dt_max = (
            sigma_min
            * dx**2
            / 4.0
            * ((0.5 - w) + np.sqrt((w - 0.5) ** 2 + 8.0 * w * w))
        )
        return TimestepBounds(0.0, float(dt_max), scheme_id, norm_kind)

    if scheme_id == IMEX2_CTR and norm_kind == "linf":
        dt_min = eps * dx + sigma_max * dx / 6.0
        dt_max = _root_one_plus_sqrt(sigma_min, dx, eps, 9.0, 18.0)
        return TimestepBounds(dt_min, dt_max, scheme_id, norm_kind)

    if norm_kind == "l2" and scheme_id in (IMEX2_CTR, EF_IMEX2, EF_IMEX1):
        if scheme_id == EF_IMEX1:
            dt_max = _root_one_plus_sqrt(sigma_min, dx, eps, 8.0, 16.0)
            return TimestepBounds(0.0, dt_max, scheme_id, norm_kind)
        if printed_variant:
            r = 2.0 * eps / (sigma_min * dx**2)
            dt_max = sigma_min * dx**2 / 12.0 * (1.0 + np.sqrt(1.0 + 6.0 * r * r))
        else:
            dt_max = _root_one_plus_sqrt(sigma_min, dx, eps, 12.0, 24.0)
        return TimestepBounds(0.0, float(dt_max), scheme_id, norm_kind)

    if norm_kind == "positivity" and scheme_id in (EF_IMEX1, EF_IMEX2):
        w = eps * u_max / (sigma_min * dx)
        rad = (1.0 - w) ** 2 + 8.0 * eps**2 * (u_max**2 + c**2) / (sigma_max**2 * dx**2)
        dt_max = sigma_min * dx**2 / 4.0 * ((1.0 - w) + np.sqrt(rad))
        return TimestepBounds(0.0, float(dt_max), scheme_id, norm_kind)

    if scheme_id == MH_STRANG:
        dt_max = 0.9 * min(2.0 * eps**2 / sigma_max, eps * dx / (u_max + c))
        return TimestepBounds(0.0, dt_max, scheme_id, norm_kind)

    raise ValueError(f"unsupported scheme/norm pair ({scheme_id}, {norm_kind})")


def _refined_condition_a(dt: float, eps: float, sigma: float, dx: float) -> float:
    f = compute_factors(sigma, dt, eps)
    return float(
        1.0
        - f.M_plus_plus * dt**2 / (eps**2 * dx**2)
        - f.M2 * sigma * dt / (3.0 * eps**2)
    )


def _refined_condition_b(dt: float, eps: float, sigma: float, dx: float) -> float:
    # The exact lower-bound condition divided by dt (dt = 0 is never useful).
    f = compute_factors(sigma, dt, eps)
    return float(
        f.M_plus_plus * dt / (2.0 * eps**2 * dx**2)
        - f.M_tilde / (2.0 * eps * dx)
        - f.M2 * sigma / (12.0 * eps**2)
    )


def _refined_condition_c(dt: float, eps: float, sigma: float, dx: float) -> float:
    f = compute_factors(sigma, dt, eps)
    return float(
        f.M2 * sigma * dt / (3.0 * eps**2) - f.M_minus_plus * dt**2 / (eps**2 * dx**2)
    )


def _bisect(fn, lo: float, hi: float, tol: float) -> float:
    flo, fhi = fn(lo), fn(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise ValueError("no sign change in the search bracket; interval empty")
    while hi - lo > tol * hi:
        mid = 0.5 * (lo + hi)
        fmid = fn(mid)
        if fmid == 0.0:
            return mid
        if flo * fmid < 0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


def dt_imex2_linf_refined(
    eps: float, sigma: float, dx: float, tol: float = 1e-12
) -> TimestepBounds:
    """Exact l-inf interval for the second-order centered scheme.

    Solves the per-step convex-combination conditions with the true
    implicitness factors: dt_max is the root of the diagonal-nonnegativity
    condition, dt_min the largest root of the dissipation-dominance condition.
    The third (off-diagonal) condition is verified across the returned
    interval and surfaced as a warning if it fails anywhere.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    closed = dt_bounds(IMEX2_CTR, "linf", eps, sigma, sigma, dx)

    cond_a = lambda dt: _refined_condition_a(dt, eps, sigma, dx)
    hi = 10.0 * closed.dt_max
    if cond_a(hi) >= 0:
        raise ValueError("no sign change in the search bracket; interval empty")
    dt_max = _bisect(cond_a, 1e-300, hi, tol)

    cond_b = lambda dt: _refined_condition_b(dt, eps, sigma, dx)
    hi_b = 10.0 * closed.dt_min
    grid = np.geomspace(1e-8 * closed.dt_min, hi_b, 256)
    vals = [cond_b(t) for t in grid]
    crossing = None
    for i in range(len(grid) - 1):
        if vals[i] <= 0.0 < vals[i + 1]:
            crossing = i
    if crossing is None:
        raise ValueError("no sign change in the search bracket; interval empty")
    dt_min = _bisect(cond_b, float(grid[crossing]), float(grid[crossing + 1]), tol)

    for t in np.linspace(dt_min, dt_max, 64):
        if _refined_condition_c(float(t), eps, sigma, dx) < -1e-14:
            warnings.warn(
                "off-diagonal dissipation condition violated inside the refined "
                f"interval near dt={float(t):.3e}",
                stacklevel=2,
            )
            break

    return TimestepBounds(dt_min, dt_max, IMEX2_CTR, "linf")


def amplification_matrix(
    scheme_id: str, k: float, dt: float, dx: float, eps: float, sigma: float
) -> np.ndarray:
    """2x2 complex step matrix of the Fourier mode e^{-i j k dx}.

    Expressed in the diagonal variables (u, v) for the first-order centered
    scheme and in the weighted variables (u~, v~) for the second-order one.
    """
    if not (dt > 0 and dx > 0 and eps > 0 and sigma > 0):
        raise ValueError("dt, dx, eps, sigma must be positive")
    f = compute_factors(sigma, dt, eps)
    s2 = np.sin(k * dx / 2.0) ** 2
    s1 = np.sin(k * dx)
    if scheme_id == IMEX1_CTR:
        a = 4.0 * float(f.M) * dt**2 / (eps**2 * dx**2) * s2
        c = float(f.M) * dt / (eps * dx) * s1
        b = sigma * float(f.M) * dt / (2.0 * eps**2)
        return np.array(
            [[1.0 - a - b + 1j * c, b], [b, 1.0 - a - b - 1j * c]], dtype=complex
        )
    if scheme_id == IMEX2_CTR:
        a = 2.0 * dt**2 / (eps**2 * dx**2) * s2
        c = dt / (eps * dx) * s1
        b = (2.0 + np.cos(k * dx)) / 3.0 * sigma * dt / (2.0 * eps**2)
        diag = 1.0 - float(f.M_plus_plus) * a - float(f.M2) * b
        off = float(f.M2) * b - float(f.M_minus_plus) * a
        ic = 1j * float(f.M_tilde) * c
        return np.array([[diag + ic, off], [off, diag - ic]], dtype=complex)
    raise ValueError(f"no amplification matrix for scheme {scheme_id!r}")


def matrix_two_norm(A: np.ndarray) -> float:
    """Spectral (largest singular value) norm."""
    return float(np.linalg.svd(A, compute_uv=False)[0])
