"""Grid, state, stiffness factors, boundaries, transforms, norms."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apsolve.core import (
    Grid1D,
    apply_boundary,
    compute_factors,
    from_invariants,
    hybrid_bc,
    make_params,
    make_state,
    norm,
    periodic_bc,
    to_invariants,
    zero_gradient_bc,
)


# ---------------------------------------------------------------- grid


def test_grid_geometry():
    g = Grid1D(0.0, 1.0, 4, n_ghost=1)
    assert g.dx == 0.25
    assert np.allclose(g.centers, [0.125, 0.375, 0.625, 0.875])
    assert g.n_total == 6
    assert np.allclose(g.centers_with_ghosts[0], -0.125)


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid1D(1.0, 0.0, 4)
    with pytest.raises(ValueError):
        Grid1D(0.0, 1.0, 4, n_ghost=3)
    with pytest.raises(ValueError):
        Grid1D(0.0, 1.0, 0)


# ------------------------------------------------------ stiffness factors


def test_factors_at_x_equal_one():
    # sigma=1, dt=0.01, eps=0.1 gives x = 1.
    f = compute_factors(1.0, 0.01, 0.1)
    assert np.isclose(float(f.x), 1.0)
    assert np.isclose(float(f.M), 0.5)
    assert np.isclose(float(f.M_half), 2.0 / 3.0)
    assert np.isclose(float(f.M3), 0.4)


def test_factors_small_x_limit():
    f = compute_factors(1.0, 1e-12, 1.0)
    for name in ("M", "M_half", "M1", "M1p", "M2", "M2p", "M_tilde", "M_plus_plus", "M3"):
        assert np.isclose(float(getattr(f, name)), 1.0, atol=1e-10)
    assert float(f.M_minus_plus) < 1e-12


def test_factors_stiff_values():
    # sigma=1, dt=1, eps=1e-3 gives x = 1e6.
    f = compute_factors(1.0, 1.0, 1e-3)
    assert np.isclose(float(f.M), 1e-6, rtol=1e-5)
    assert float(f.M1p) * (1.0 + float(f.x)) <= 4.0 + 1e-12


def test_factors_closed_form_cross_check():
    # Independent direct evaluation at a handful of x values.
    for x in (1e-6, 0.37, 1.0, 42.0, 1e5):
        f = compute_factors(x, 1.0, 1.0)
        y = x / 2
        assert np.isclose(float(f.M), 1 / (1 + x), rtol=1e-14)
        assert np.isclose(float(f.M1), 1 / (1 + y + y * y), rtol=1e-14)
        assert np.isclose(float(f.M1p), (1 + y) / (1 + y + y * y), rtol=1e-14)
        assert np.isclose(float(f.M2), (1 + y) / (1 + 2 * y + 2 * y * y), rtol=1e-14)
        assert np.isclose(float(f.M2p), (1 + 2 * y) / (1 + 2 * y + 2 * y * y), rtol=1e-14)
        assert np.isclose(float(f.M3), 1 / (1 + x + x * x / 2), rtol=1e-14)
        assert np.isclose(
            float(f.M_minus_plus), (float(f.M1p) - float(f.M2p)) / 2, atol=1e-16, rtol=1e-9
        )


def test_factors_vectorized():
    sig = np.array([0.5, 1.0, 2.0])
    f = compute_factors(sig, 0.1, 0.5)
    assert f.M.shape == (3,)
    assert np.all(np.diff(f.M) < 0)  # larger sigma, smaller factor


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=-12.0, max_value=12.0))
def test_factors_bounds_property(log10_x):
    # Sweep x over [1e-12, 1e12]: everything in (0,1], ordering relations hold.
    x = 10.0**log10_x
    f = compute_factors(x, 1.0, 1.0)
    for name in ("M", "M_half", "M1", "M1p", "M2", "M2p", "M_tilde", "M_plus_plus", "M3"):
        v = float(getattr(f, name))
        assert 0.0 < v <= 1.0 + 1e-15, name
    assert float(f.M1p) * (1.0 + x) <= 4.0 * (1 + 1e-12)
    assert float(f.M2p) * (1.0 + x) <= 2.0 * (1 + 1e-12)
    assert float(f.M_tilde) <= float(f.M_plus_plus) * (1 + 1e-12)
    assert float(f.M_minus_plus) >= 0.0


def test_factors_extreme_x_no_overflow():
    f = compute_factors(1e15, 1.0, 1.0)
    assert 0 < float(f.M1) < 1e-29
    assert 0 < float(f.M_minus_plus) < float(f.M_plus_plus)
    assert np.isfinite(float(f.M_tilde))


def test_factors_rejects_bad_input():
    with pytest.raises(ValueError):
        compute_factors(1.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        compute_factors(-1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        compute_factors(1e308, 1e308, 1e-300)


# ------------------------------------------------------------ boundaries


def test_periodic_wrap():
    g = Grid1D(0.0, 1.0, 3, n_ghost=1)
    s = make_state("hhe", g, [1.0, 2.0, 3.0], [4.0, 5.0, 6.0])
    out = apply_boundary(s, periodic_bc())
    assert out.field_a[0] == 3.0 and out.field_a[-1] == 1.0
    assert out.field_b[0] == 6.0 and out.field_b[-1] == 4.0
    # input untouched
    assert s.field_a[0] == 0.0


def test_hybrid_ghosts():
    g = Grid1D(0.0, 1.0, 3, n_ghost=1)
    s = make_state("hhe", g, [1.0, 2.0, 3.0], [0.3, 0.5, 0.7])
    out = apply_boundary(s, hybrid_bc(1.0, 2.0))
    # constant-compatible Dirichlet mean on the left: (a0 + a1)/2 = 1
    assert out.field_a[0] == 2.0 * 1.0 - 1.0 == 1.0
    assert out.field_a[-1] == 2.0 * 2.0 - 3.0 == 1.0
    # homogeneous Neumann on field_b
    assert out.field_b[0] == 0.3 and out.field_b[-1] == 0.7


def test_hybrid_second_ghost_layer():
    g = Grid1D(0.0, 1.0, 4, n_ghost=2)
    s = make_state("hhe", g, [1.0, 2.0, 3.0, 4.0], [0.1, 0.2, 0.3, 0.4])
    out = apply_boundary(s, hybrid_bc(0.5, 5.0))
    assert out.field_a[1] == 2 * 0.5 - 1.0  # first ghost reflects E_1
    assert out.field_a[0] == 2 * 0.5 - 2.0  # second ghost reflects E_2
    assert out.field_b[0] == 0.2 and out.field_b[1] == 0.1
    assert out.field_a[-1] == 2 * 5.0 - 3.0
    assert out.field_b[-1] == 0.3


def test_zero_gradient_ghosts():
    g = Grid1D(0.0, 1.0, 3, n_ghost=2)
    s = make_state("euler", g, [1.0, 2.0, 3.0], [0.1, 0.2, 0.3])
    out = apply_boundary(s, zero_gradient_bc())
    assert np.all(out.field_a[:2] == 1.0) and np.all(out.field_a[-2:] == 3.0)
    assert np.all(out.field_b[:2] == 0.1) and np.all(out.field_b[-2:] == 0.3)


def test_apply_boundary_idempotent():
    g = Grid1D(0.0, 1.0, 5, n_ghost=2)
    rng = np.random.default_rng(7)
    s = make_state("hhe", g, rng.normal(size=5), rng.normal(size=5))
    for bc in (periodic_bc(), hybrid_bc(0.3, -1.2), zero_gradient_bc()):
        once = apply_boundary(s, bc)
        twice = apply_boundary(once, bc)
        assert np.array_equal(once.field_a, twice.field_a)
        assert np.array_equal(once.field_b, twice.field_b)


# ------------------------------------------------------------ transforms


def test_invariants_basic():
    g = Grid1D(0.0, 1.0, 2, n_ghost=1)
    s = make_state("hhe", g, [1.0, 1.0], [0.0, 0.0])
    u, v = to_invariants(s)
    assert np.allclose(u[g.interior], 1.0) and np.allclose(v[g.interior], 1.0)
    s2 = make_state("hhe", g, [0.0, 0.0], [1.0, 1.0])
    u2, v2 = to_invariants(s2)
    assert np.allclose(u2[g.interior], 1.0) and np.allclose(v2[g.interior], -1.0)


def test_invariants_round_trip():
    g = Grid1D(0.0, 1.0, 8, n_ghost=1)
    rng = np.random.default_rng(3)
    s = make_state("hhe", g, rng.normal(size=8), rng.normal(size=8))
    u, v = to_invariants(s)
    a, b = from_invariants(u, v)
    assert np.allclose(a, s.field_a, atol=1e-15)
    assert np.allclose(b, s.field_b, atol=1e-15)


def test_invariants_weighted_limit():
    # Tilde weights approach (1,1) as dt -> 0.
    g = Grid1D(0.0, 1.0, 4, n_ghost=1)
    rng = np.random.default_rng(4)
    s = make_state("hhe", g, rng.normal(size=4), rng.normal(size=4))
    u0, v0 = to_invariants(s)
    f = compute_factors(1.0, 1e-10, 1.0)
    u1, v1 = to_invariants(s, (float(np.sqrt(f.M2)), float(np.sqrt(f.M1))))
    assert np.allclose(u0, u1, atol=1e-9)
    assert np.allclose(v0, v1, atol=1e-9)


# ------------------------------------------------------------------ norms


def test_norms():
    g = Grid1D(0.0, 1.0, 2, n_ghost=1)
    assert norm(np.array([3.0, -4.0]), g, "linf") == 4.0
    g4 = Grid1D(0.0, 1.0, 4, n_ghost=1)
    assert np.isclose(norm(np.ones(4), g4, "l2"), 1.0)


def test_norm_homogeneous():
    g = Grid1D(0.0, 1.0, 16, n_ghost=1)
    rng = np.random.default_rng(5)
    v = rng.normal(size=16)
    assert np.isclose(norm(2.5 * v, g, "l2"), 2.5 * norm(v, g, "l2"))
    assert np.isclose(norm(v, g, "l2") ** 2, np.sum(v * v) * g.dx)


def test_norm_errors():
    g = Grid1D(0.0, 1.0, 2, n_ghost=1)
    with pytest.raises(ValueError):
        norm(np.array([]), g, "l2")
    with pytest.raises(ValueError):
        norm(np.ones(2), g, "l1")


# ------------------------------------------------------------ parameters


def test_make_params_profiles():
    g = Grid1D(0.0, 1.0, 4, n_ghost=1)
    p = make_params(0.1, 2.0, g)
    assert p.sigma.shape == (6,)
    assert p.sigma_min == p.sigma_max == 2.0
    p2 = make_params(0.1, lambda x: 1.0 + x**2, g)
    assert p2.sigma_min < p2.sigma_max
    with pytest.raises(ValueError):
        make_params(0.0, 1.0, g)
    with pytest.raises(ValueError):
        make_params(0.1, -1.0, g)
