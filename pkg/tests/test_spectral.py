"""Spectrum, angle tables and equilibrium observables."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xyquench import (
    GridScheme,
    ModelParams,
    MomentumGrid,
    bogoliubov_frame,
    critical_field,
    dispersion,
    equilibrium_observables,
    finite_ns_grid,
    midpoint_grid,
)

deltas = st.floats(min_value=-2.0, max_value=2.0, allow_nan=False)
fields = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)


class TestGrids:
    def test_midpoint_layout(self):
        grid = midpoint_grid(8)
        assert grid.scheme is GridScheme.THERMODYNAMIC_MIDPOINT
        np.testing.assert_allclose(grid.points, (np.arange(1, 9) - 0.5) * np.pi / 8, rtol=0, atol=0)
        np.testing.assert_array_equal(grid.weights, np.full(8, 1.0 / 8))

    def test_finite_ns_layout(self):
        grid = finite_ns_grid(8)
        assert grid.scheme is GridScheme.FINITE_NS
        np.testing.assert_allclose(
            grid.points, np.array([1, 3, 5, 7]) * np.pi / 8, rtol=0, atol=0
        )
        np.testing.assert_array_equal(grid.weights, np.full(4, 0.25))

    @pytest.mark.parametrize("grid", [midpoint_grid(16384), midpoint_grid(100), finite_ns_grid(12)])
    def test_weights_sum_to_one(self, grid):
        assert abs(np.sum(grid.weights) - 1.0) <= 4 * np.finfo(float).eps

    @pytest.mark.parametrize("grid", [midpoint_grid(1024), finite_ns_grid(10)])
    def test_points_open_interval_increasing(self, grid):
        assert np.all(grid.points > 0.0) and np.all(grid.points < np.pi)
        assert np.all(np.diff(grid.points) > 0.0)

    def test_bad_sizes_rejected(self):
        with pytest.raises(ValueError):
            midpoint_grid(0)
        with pytest.raises(ValueError):
            finite_ns_grid(7)
        with pytest.raises(ValueError):
            finite_ns_grid(0)

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            MomentumGrid(GridScheme.FINITE_NS, np.array([0.0, 1.0]), np.array([0.5, 0.5]))
        with pytest.raises(ValueError):
            MomentumGrid(GridScheme.FINITE_NS, np.array([2.0, 1.0]), np.array([0.5, 0.5]))


class TestDispersion:
    def test_ising_zero_field_at_half_pi(self):
        a, b, eps = dispersion(ModelParams(1.0, 0.0), math.pi / 2)
        assert abs(a) < 1e-15 and abs(b - 2.0) < 1e-15 and abs(eps - 2.0) < 1e-15

    @pytest.mark.parametrize("delta", [0.0, 0.3, 1.0])
    def test_gap_closes_at_critical_point(self, delta):
        a, b, eps = dispersion(ModelParams(delta, 1.0), math.pi)
        assert abs(a) < 1e-14 and abs(b) < 1e-14 and eps < 1e-14

    def test_hand_evaluated_point(self):
        # delta=0.5, h=0.5, k=pi/3: a = -2(1/2 + 1/2), b = sin(pi/3), eps = sqrt(19)/2
        a, b, eps = dispersion(ModelParams(0.5, 0.5), math.pi / 3)
        assert abs(a - (-2.0)) < 1e-14
        assert abs(b - math.sqrt(3.0) / 2.0) < 1e-14
        assert abs(eps - math.sqrt(19.0) / 2.0) < 1e-14

    def test_vectorized_matches_scalar(self):
        params = ModelParams(0.7, 1.3)
        ks = np.linspace(0.1, 3.0, 7)
        a, b, eps = dispersion(params, ks)
        for i, k in enumerate(ks):
            ai, bi, ei = dispersion(params, float(k))
            assert a[i] == ai and b[i] == bi and eps[i] == ei

    def test_nonfinite_params_rejected(self):
        with pytest.raises(ValueError):
            ModelParams(math.inf, 0.0)
        with pytest.raises(ValueError):
            ModelParams(0.5, math.nan)


class TestBogoliubovFrame:
    @settings(max_examples=60, deadline=None)
    @given(delta=deltas, h=fields)
    def test_angle_normalization(self, delta, h):
        frame = bogoliubov_frame(ModelParams(delta, h), midpoint_grid(257))
        norm = frame.cos2theta**2 + frame.sin2theta**2
        assert np.max(np.abs(norm - 1.0)) < 1e-14

    def test_ising_zero_field_angles(self):
        grid = midpoint_grid(64)
        frame = bogoliubov_frame(ModelParams(1.0, 0.0), grid)
        np.testing.assert_allclose(frame.cos2theta, -np.cos(grid.points), atol=1e-14)
        np.testing.assert_allclose(frame.sin2theta, np.sin(grid.points), atol=1e-14)

    def test_large_field_polarizes(self):
        frame = bogoliubov_frame(ModelParams(0.8, 1e6), midpoint_grid(64))
        assert np.all(frame.cos2theta < -1.0 + 1e-10)
        assert np.max(np.abs(frame.sin2theta)) < 1e-5

    def test_xx_line_signs(self):
        grid = midpoint_grid(128)
        frame = bogoliubov_frame(ModelParams(0.0, 0.5), grid)
        edge = math.acos(-0.5)
        below = grid.points < edge
        assert np.all(frame.cos2theta[below] == -1.0)
        assert np.all(frame.cos2theta[~below] == 1.0)
        assert np.all(frame.sin2theta == 0.0)

    def test_epsilon_nonnegative(self):
        frame = bogoliubov_frame(ModelParams(-1.5, -2.0), midpoint_grid(101))
        assert np.all(frame.epsilon >= 0.0)

    def test_gapless_mode_takes_occupied_side_limit(self):
        # delta=0 with h = -cos(k) closes the gap exactly on that grid point
        grid = finite_ns_grid(4)
        h = -float(np.cos(grid.points[1]))
        frame = bogoliubov_frame(ModelParams(0.0, h), grid)
        assert frame.epsilon[1] == 0.0
        assert frame.cos2theta[1] == -1.0 and frame.sin2theta[1] == 0.0


class TestEquilibrium:
    def test_ising_zero_field(self):
        mz, sxx = equilibrium_observables(ModelParams(1.0, 0.0), midpoint_grid(16384))
        assert abs(mz) < 1e-12
        assert abs(sxx - 1.0) < 1e-9

    @pytest.mark.parametrize("h", [0.3, 0.5, 0.9])
    def test_xx_closed_form(self, h):
        # free-fermion filling: m_z = 2 arccos(-h)/pi - 1, s_xx = 2 sqrt(1-h^2)/pi
        mz, sxx = equilibrium_observables(ModelParams(0.0, h), midpoint_grid(16384))
        edge = math.acos(-h)
        assert abs(mz - (2.0 * edge / math.pi - 1.0)) < 1e-12
        assert abs(sxx - 2.0 * math.sin(edge) / math.pi) < 5e-9

    def test_xx_saturates_at_critical_field(self):
        mz, _ = equilibrium_observables(ModelParams(0.0, 1.0), midpoint_grid(16384))
        assert abs(mz - 1.0) < 1e-12

    def test_saturation_and_monotonicity(self):
        grid = midpoint_grid(4096)
        mz_high, _ = equilibrium_observables(ModelParams(1.0, 10.0), grid)
        assert mz_high > 0.99
        hs = np.linspace(0.0, 2.0, 81)
        mzs = [equilibrium_observables(ModelParams(1.0, float(h)), grid)[0] for h in hs]
        assert np.all(np.diff(mzs) > 0.0)

    def test_finite_ns_matches_midpoint_limit(self):
        # NS(2M) momenta coincide with the M-point midpoint rule
        mz_a, sxx_a = equilibrium_observables(ModelParams(0.5, 0.7), midpoint_grid(2048))
        mz_b, sxx_b = equilibrium_observables(ModelParams(0.5, 0.7), finite_ns_grid(4096))
        assert abs(mz_a - mz_b) < 1e-13 and abs(sxx_a - sxx_b) < 1e-13

    @pytest.mark.parametrize("delta,h", [(1.0, 0.5), (0.5, 1.5), (1.0, 0.99)])
    def test_grid_convergence(self, delta, h):
        sizes = [1024, 2048, 4096, 8192, 16384]
        values = [
            equilibrium_observables(ModelParams(delta, h), midpoint_grid(m))[0] for m in sizes
        ]
        values.append(equilibrium_observables(ModelParams(delta, h), midpoint_grid(32768))[0])
        diffs = [abs(values[i] - values[i + 1]) for i in range(len(sizes))]
        # decreasing until the rounding floor
        for earlier, later in zip(diffs, diffs[1:]):
            assert later <= max(earlier, 5e-15)
        assert diffs[-1] < 1e-9


def test_critical_field_flat_in_delta():
    assert critical_field(1.0) == 1.0
    assert critical_field(0.5) == 1.0
    assert critical_field(0.0) == 1.0
    with pytest.raises(ValueError):
        critical_field(math.inf)
