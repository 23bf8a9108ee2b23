"""Single-quench evolution, long-time averages and ergodicity metrics."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xyquench import (
    ModelParams,
    QuenchProtocol,
    TimeSeries,
    equilibrium_observables,
    ergodic_width,
    ergodicity_report,
    evolve_single,
    long_time_average_single,
    midpoint_grid,
    overlap_c0,
    stationary_mode_residual,
    stationary_modes,
    sweep_final_field,
)

fm_fields = st.floats(min_value=0.0, max_value=0.99, allow_nan=False)


@pytest.fixture(scope="module")
def grid():
    return midpoint_grid(2048)


def random_protocols(count, rng, cyclic=False):
    for _ in range(count):
        delta = rng.uniform(0.1, 1.0)
        h_i = rng.uniform(0.0, 2.5)
        h_f1 = rng.uniform(0.0, 2.5)
        if cyclic:
            yield QuenchProtocol.cycle(delta, h_i, h_f1, rng.uniform(0.0, 5.0))
        else:
            yield QuenchProtocol(delta, h_i, h_f1)


class TestProtocolAndSeries:
    def test_cycle_returns_to_start(self):
        p = QuenchProtocol.cycle(1.0, 0.5, 2.0, 3.0)
        assert p.h_f2 == p.h_i and p.is_cyclic

    def test_partial_cyclic_part_rejected(self):
        with pytest.raises(ValueError):
            QuenchProtocol(1.0, 0.5, 2.0, h_f2=0.5)
        with pytest.raises(ValueError):
            QuenchProtocol(1.0, 0.5, 2.0, h_f2=0.5, dwell_time=-1.0)

    def test_times_must_increase(self):
        with pytest.raises(ValueError):
            TimeSeries(np.array([0.0, 0.0]), np.zeros(2), np.zeros(2))


class TestEvolveSingle:
    def test_no_quench_is_constant(self, grid):
        rng = np.random.default_rng(3)
        times = np.linspace(0.0, 100.0, 101)
        for _ in range(20):
            delta, h = rng.uniform(0.05, 1.0), rng.uniform(0.0, 3.0)
            series = evolve_single(QuenchProtocol(delta, h, h), grid, times)
            assert np.max(np.abs(series.mz - series.mz[0])) < 1e-12
            assert np.max(np.abs(series.sxx - series.sxx[0])) < 1e-12
            mz_eq, sxx_eq = equilibrium_observables(ModelParams(delta, h), grid)
            assert abs(series.mz[0] - mz_eq) < 1e-12
            assert abs(series.sxx[0] - sxx_eq) < 1e-12

    def test_initial_value_matches_initial_equilibrium(self, grid):
        rng = np.random.default_rng(11)
        for protocol in random_protocols(25, rng):
            series = evolve_single(protocol, grid, [0.0])
            mz_eq, sxx_eq = equilibrium_observables(protocol.initial_params(), grid)
            assert abs(series.mz[0] - mz_eq) < 1e-12
            assert abs(series.sxx[0] - sxx_eq) < 1e-12

    @settings(max_examples=25, deadline=None)
    @given(
        delta=st.floats(min_value=0.05, max_value=1.0),
        h_i=st.floats(min_value=0.0, max_value=3.0),
        h_f1=st.floats(min_value=0.0, max_value=3.0),
    )
    def test_observables_bounded(self, delta, h_i, h_f1):
        grid = midpoint_grid(512)
        series = evolve_single(QuenchProtocol(delta, h_i, h_f1), grid, np.linspace(0, 25, 64))
        assert np.max(np.abs(series.mz)) <= 1.0 + 1e-9
        assert np.max(np.abs(series.sxx)) <= 1.0 + 1e-9


class TestLongTimeAverage:
    def test_no_quench_equals_equilibrium(self, grid):
        mz_bar, sxx_bar = long_time_average_single(QuenchProtocol(0.8, 1.2, 1.2), grid)
        mz_eq, sxx_eq = equilibrium_observables(ModelParams(0.8, 1.2), grid)
        assert abs(mz_bar - mz_eq) < 1e-14
        assert abs(sxx_bar - sxx_eq) < 1e-14

    def test_infinite_field_limit_returns_initial_equilibrium(self):
        # averaged magnetization tends to the initial equilibrium as h_f1 grows
        grid = midpoint_grid(16384)
        mz_eq, _ = equilibrium_observables(ModelParams(1.0, 0.5), grid)
        dev100 = abs(long_time_average_single(QuenchProtocol(1.0, 0.5, 100.0), grid)[0] - mz_eq)
        dev1000 = abs(long_time_average_single(QuenchProtocol(1.0, 0.5, 1000.0), grid)[0] - mz_eq)
        assert dev100 < 2e-2
        assert dev1000 < dev100

    def test_matches_empirical_time_mean(self):
        grid = midpoint_grid(1024)
        protocol = QuenchProtocol(1.0, 0.5, 2.0)
        series = evolve_single(protocol, grid, np.linspace(0.0, 500.0, 50_000))
        mz_bar, sxx_bar = long_time_average_single(protocol, grid)
        assert abs(np.mean(series.mz) - mz_bar) < 1e-3
        assert abs(np.mean(series.sxx) - sxx_bar) < 1e-3

    def test_empirical_consistency_random_protocols(self):
        grid = midpoint_grid(512)
        rng = np.random.default_rng(42)
        times = np.linspace(0.0, 500.0, 50_000)
        checked = 0
        while checked < 20:
            delta = rng.uniform(0.2, 1.0)
            h_i = rng.uniform(0.0, 2.0)
            h_f1 = rng.uniform(0.0, 2.0)
            if abs(h_f1 - 1.0) < 0.1:
                continue  # gapless final point averages too slowly for the window
            protocol = QuenchProtocol(delta, h_i, h_f1)
            series = evolve_single(protocol, grid, times)
            mz_bar, sxx_bar = long_time_average_single(protocol, grid)
            assert abs(np.mean(series.mz) - mz_bar) < 1e-3
            assert abs(np.mean(series.sxx) - sxx_bar) < 1e-3
            checked += 1


class TestErgodicityReport:
    def test_no_quench_is_ergodic(self, grid):
        report = ergodicity_report(QuenchProtocol(1.0, 0.7, 0.7), grid, 0.01)
        assert report.deviation_mz < 1e-14 and report.deviation_sxx < 1e-14
        assert report.is_ergodic_mz and report.is_ergodic_sxx

    def test_fm_into_deep_pm_breaks_ergodicity(self):
        grid = midpoint_grid(16384)
        report = ergodicity_report(QuenchProtocol(1.0, 0.5, 4.0), grid, 0.05)
        assert not report.is_ergodic_mz

    def test_pm_into_near_critical_is_ergodic(self):
        grid = midpoint_grid(16384)
        report = ergodicity_report(QuenchProtocol(1.0, 4.0, 0.93), grid, 0.05)
        assert report.is_ergodic_mz

    def test_threshold_must_be_positive(self, grid):
        with pytest.raises(ValueError):
            ergodicity_report(QuenchProtocol(1.0, 0.5, 2.0), grid, 0.0)


class TestSweeps:
    def test_single_point_sweep_reduces_to_report(self, grid):
        [swept] = sweep_final_field(1.0, 0.5, [2.0], grid, 0.01)
        direct = ergodicity_report(QuenchProtocol(1.0, 0.5, 2.0), grid, 0.01)
        assert swept == direct

    def test_order_preserved(self, grid):
        reports = sweep_final_field(1.0, 0.5, [2.0, 0.3, 1.7], grid, 0.01)
        assert [r.h_f1 for r in reports] == [2.0, 0.3, 1.7]

    def test_empty_sweep_rejected(self, grid):
        with pytest.raises(ValueError):
            sweep_final_field(1.0, 0.5, [], grid, 0.01)

    def test_fm_start_nonergodic_throughout_pm(self):
        grid = midpoint_grid(4096)
        h_f1 = np.round(np.arange(1.1, 4.001, 0.1), 10)
        reports = sweep_final_field(1.0, 0.2, h_f1, grid, 0.01)
        assert all(r.deviation_mz > 0.05 for r in reports)

    def test_width_with_huge_threshold_covers_scan(self, grid):
        width = ergodic_width(1.0, 0.5, grid, threshold=10.0)
        assert abs(width - 0.99) < 1e-12  # 198 points at step 0.005

    def test_width_errors(self, grid):
        with pytest.raises(ValueError):
            ergodic_width(1.0, 0.5, grid, step=-0.1)
        with pytest.raises(ValueError):
            ergodic_width(1.0, 0.5, grid, scan=(0.5, 0.5), step=0.01)


class TestOverlap:
    def test_no_quench_overlap_is_one(self):
        log_abs, abs_c0 = overlap_c0(1.0, 0.5, 0.5, 100)
        assert log_abs == 0.0 and abs_c0 == 1.0

    def test_maximal_only_at_no_quench(self):
        h_i = 0.5
        values = {
            float(h_f1): overlap_c0(1.0, h_i, float(h_f1), 100)[1]
            for h_f1 in np.round(np.arange(0.1, 2.01, 0.1), 10)
        }
        assert values[h_i] == 1.0
        assert all(v < 1.0 for h, v in values.items() if h != h_i)

    def test_log_monotone_with_system_size(self):
        # every mode contributes ln|cos phi| <= 0
        small = overlap_c0(1.0, 0.5, 2.0, 8)[0]
        large = overlap_c0(1.0, 0.5, 2.0, 64)[0]
        assert large < small < 0.0

    def test_orthogonal_mode_gives_zero_overlap(self):
        # XX-line quench across the Fermi edge makes one cos phi vanish exactly
        log_abs, abs_c0 = overlap_c0(0.0, 0.0, 0.9, 8)
        assert log_abs == float("-inf") and abs_c0 == 0.0

    def test_odd_size_rejected(self):
        with pytest.raises(ValueError):
            overlap_c0(1.0, 0.5, 2.0, 7)


class TestStationaryModes:
    def test_zero_field(self):
        np.testing.assert_allclose(stationary_modes(0.0), [0.0, math.pi / 2, math.pi])

    def test_half_field(self):
        np.testing.assert_allclose(stationary_modes(0.5), [0.0, 2 * math.pi / 3, math.pi])

    def test_beyond_critical(self):
        np.testing.assert_allclose(stationary_modes(2.0), [0.0, math.pi])

    def test_critical_deduplicates(self):
        np.testing.assert_allclose(stationary_modes(1.0), [0.0, math.pi])

    @settings(max_examples=60, deadline=None)
    @given(h_i=fm_fields, h_f1=fm_fields)
    def test_residual_vanishes_within_ferromagnetic_phase(self, h_i, h_f1):
        for kappa in stationary_modes(h_f1):
            assert abs(stationary_mode_residual(1.0, h_i, h_f1, float(kappa))) < 1e-12
