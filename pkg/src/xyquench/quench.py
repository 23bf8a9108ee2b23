"""Single-quench time evolution, long-time averages and ergodicity metrics.

A quench takes the ground state at field h_i and evolves it with the
Hamiltonian at field h_f1 (the anisotropy is never quenched).  Every k mode
carries the angle mismatch phi1_k = theta_k(f1) - theta_k(i); observables
follow from the doubled pair (cos 2phi1, sin 2phi1), which is always built
from angle-difference identities on the stored (cos 2theta, sin 2theta)
tables, never from inverse trig calls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spectral import (
    BogoliubovFrame,
    ModelParams,
    MomentumGrid,
    angle_difference,
    angle_pair,
    bogoliubov_frame,
    equilibrium_observables,
    finite_ns_grid,
)

__all__ = [
    "QuenchProtocol",
    "TimeSeries",
    "ErgodicityReport",
    "evolve_single",
    "long_time_average_single",
    "ergodicity_report",
    "sweep_final_field",
    "ergodic_width",
    "overlap_c0",
    "stationary_modes",
    "stationary_mode_residual",
]

DEFAULT_THRESHOLD = 0.01


@dataclass(frozen=True)
class QuenchProtocol:
    """Fields of a single (i -> f1) or cyclic (i -> f1 -> f2) quench.

    The cyclic part is present when both ``h_f2`` and ``dwell_time`` are
    set; a return cycle goes back to the starting field, h_f2 = h_i.
    """

    delta: float
    h_i: float
    h_f1: float
    h_f2: float | None = None
    dwell_time: float | None = None

    def __post_init__(self):
        values = [self.delta, self.h_i, self.h_f1]
        if (self.h_f2 is None) != (self.dwell_time is None):
            raise ValueError("h_f2 and dwell_time must be given together")
        if self.h_f2 is not None:
            values += [self.h_f2, self.dwell_time]
            if self.dwell_time < 0.0:
                raise ValueError("dwell_time must be >= 0")
        if not all(math.isfinite(v) for v in values):
            raise ValueError("protocol fields must be finite")

    @classmethod
    def cycle(cls, delta: float, h_i: float, h_f1: float, dwell_time: float) -> "QuenchProtocol":
        """Cyclic protocol that returns to the starting field."""
        return cls(delta, h_i, h_f1, h_f2=h_i, dwell_time=dwell_time)

    @property
    def is_cyclic(self) -> bool:
        return self.h_f2 is not None

    def initial_params(self) -> ModelParams:
        return ModelParams(self.delta, self.h_i)

    def first_params(self) -> ModelParams:
        return ModelParams(self.delta, self.h_f1)

    def second_params(self) -> ModelParams:
        if not self.is_cyclic:
            raise ValueError("protocol has no cyclic part")
        return ModelParams(self.delta, self.h_f2)


@dataclass
class TimeSeries:
    """Sampled observables: strictly increasing times with M_z and S^xx."""

    times: np.ndarray
    mz: np.ndarray
    sxx: np.ndarray

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.mz = np.asarray(self.mz, dtype=float)
        self.sxx = np.asarray(self.sxx, dtype=float)
        if self.times.ndim != 1:
            raise ValueError("times must be one-dimensional")
        if self.times.size > 1 and not np.all(np.diff(self.times) > 0.0):
            raise ValueError("times must be strictly increasing")
        if self.mz.shape != self.times.shape or self.sxx.shape != self.times.shape:
            raise ValueError("observable arrays must match times in length")


@dataclass(frozen=True)
class ErgodicityReport:
    """Long-time averages of one quench against equilibrium at the final field."""

    h_f1: float
    long_time_mz: float
    long_time_sxx: float
    equilibrium_mz: float
    equilibrium_sxx: float
    deviation_mz: float
    deviation_sxx: float
    is_ergodic_mz: bool
    is_ergodic_sxx: bool


def angle_difference_pair(
    frame_to: BogoliubovFrame, frame_from: BogoliubovFrame
) -> tuple[np.ndarray, np.ndarray]:
    """(cos, sin) of twice the angle mismatch between two frames."""
    return angle_difference(
        frame_to.cos2theta, frame_to.sin2theta, frame_from.cos2theta, frame_from.sin2theta
    )


def _single_quench_tables(protocol: QuenchProtocol, grid: MomentumGrid):
    frame_i = bogoliubov_frame(protocol.initial_params(), grid)
    frame_f = bogoliubov_frame(protocol.first_params(), grid)
    cos2phi1, sin2phi1 = angle_difference_pair(frame_f, frame_i)
    return frame_f, cos2phi1, sin2phi1


def evolve_single(protocol: QuenchProtocol, grid: MomentumGrid, times) -> TimeSeries:
    """Exact M_z(t) and S^xx(t) after a single quench.

    Each mode contributes a static part plus an oscillation at frequency
    2 eps_k of the post-quench spectrum:

    M_z(t)  = -sum_k w_k [cos2theta_f cos2phi1 + sin2theta_f sin2phi1 cos(2 eps_k t)]
    S^xx(t) = -sum_k w_k [cos2phi1 cos(k + 2theta_f)
                          + sin2phi1 sin(k + 2theta_f) cos(2 eps_k t)]
    """
    times = np.asarray(times, dtype=float)
    frame_f, cos2phi1, sin2phi1 = _single_quench_tables(protocol, grid)
    k, w = grid.points, grid.weights
    cos_k, sin_k = np.cos(k), np.sin(k)
    cos_k2t = cos_k * frame_f.cos2theta - sin_k * frame_f.sin2theta
    sin_k2t = sin_k * frame_f.cos2theta + cos_k * frame_f.sin2theta
    mz_static = -np.sum(w * frame_f.cos2theta * cos2phi1)
    sxx_static = -np.sum(w * cos2phi1 * cos_k2t)
    mz_osc = w * frame_f.sin2theta * sin2phi1
    sxx_osc = w * sin2phi1 * sin_k2t
    mz = np.empty(times.size)
    sxx = np.empty(times.size)
    block_len = max(1, 2_000_000 // max(1, len(grid)))
    for start in range(0, times.size, block_len):
        block = times[start : start + block_len]
        phases = np.cos(2.0 * np.outer(block, frame_f.epsilon))
        mz[start : start + block_len] = mz_static - phases @ mz_osc
        sxx[start : start + block_len] = sxx_static - phases @ sxx_osc
    return TimeSeries(times, mz, sxx)


def long_time_average_single(protocol: QuenchProtocol, grid: MomentumGrid) -> tuple[float, float]:
    """Infinite-time averages of the single-quench series.

    The oscillatory terms average to zero exactly (no mode on either grid
    is gapless away from forced k = pi at h = 1), leaving the static sums.
    """
    frame_f, cos2phi1, _ = _single_quench_tables(protocol, grid)
    k, w = grid.points, grid.weights
    cos_k2t = np.cos(k) * frame_f.cos2theta - np.sin(k) * frame_f.sin2theta
    mz_bar = -np.sum(w * frame_f.cos2theta * cos2phi1)
    sxx_bar = -np.sum(w * cos2phi1 * cos_k2t)
    return float(mz_bar), float(sxx_bar)


def ergodicity_report(
    protocol: QuenchProtocol, grid: MomentumGrid, threshold: float = DEFAULT_THRESHOLD
) -> ErgodicityReport:
    """Compare long-time averages with equilibrium at the final field."""
    if threshold <= 0.0:
        raise ValueError("threshold must be positive")
    mz_bar, sxx_bar = long_time_average_single(protocol, grid)
    mz_eq, sxx_eq = equilibrium_observables(protocol.first_params(), grid)
    dev_mz = abs(mz_bar - mz_eq)
    dev_sxx = abs(sxx_bar - sxx_eq)
    return ErgodicityReport(
        h_f1=protocol.h_f1,
        long_time_mz=mz_bar,
        long_time_sxx=sxx_bar,
        equilibrium_mz=mz_eq,
        equilibrium_sxx=sxx_eq,
        deviation_mz=dev_mz,
        deviation_sxx=dev_sxx,
        is_ergodic_mz=bool(dev_mz < threshold),
        is_ergodic_sxx=bool(dev_sxx < threshold),
    )


def sweep_final_field(
    delta: float,
    h_i: float,
    h_f1_values,
    grid: MomentumGrid,
    threshold: float = DEFAULT_THRESHOLD,
) -> list[ErgodicityReport]:
    """One ergodicity report per final field, in input order."""
    h_f1_values = np.atleast_1d(np.asarray(h_f1_values, dtype=float))
    if h_f1_values.size == 0:
        raise ValueError("h_f1_values must be nonempty")
    return [
        ergodicity_report(QuenchProtocol(delta, h_i, float(hf)), grid, threshold)
        for hf in h_f1_values
    ]


def ergodic_width(
    delta: float,
    h_i: float,
    grid: MomentumGrid,
    threshold: float = DEFAULT_THRESHOLD,
    scan: tuple[float, float] = (0.01, 1.0),
    step: float = 0.005,
) -> float:
    """Measure of final fields whose magnetization stays ergodic.

    Scans h_f1 over the half-open interval (scan[0], scan[1]] on the given
    step and returns step * count of points with deviation below the
    threshold.
    """
    if step <= 0.0:
        raise ValueError("step must be positive")
    lo, hi = scan
    count = int(math.floor((hi - lo) / step + 1e-9))
    if count < 1:
        raise ValueError("scan range holds no points at this step")
    points = lo + step * np.arange(1, count + 1)
    reports = sweep_final_field(delta, h_i, points, grid, threshold)
    inside = sum(1 for r in reports if r.deviation_mz < threshold)
    return step * inside


def overlap_c0(delta: float, h_i: float, h_f1: float, n_sites: int) -> tuple[float, float]:
    """Ground-state overlap magnitude |<gs(f1)|gs(i)>| on an N-site ring.

    log|C_0| = sum_{k>0} ln|cos phi1_k|, evaluated through half-angle
    identities so no inverse trig is needed.  A mode with cos phi1 = 0
    kills the overlap: abs 0 with -inf reported for the log.
    """
    grid = finite_ns_grid(n_sites)
    frame_i = bogoliubov_frame(ModelParams(delta, h_i), grid)
    frame_f = bogoliubov_frame(ModelParams(delta, h_f1), grid)
    cos2phi1, _ = angle_difference_pair(frame_f, frame_i)
    cos_phi_sq = np.clip((1.0 + cos2phi1) / 2.0, 0.0, 1.0)
    if np.any(cos_phi_sq == 0.0):
        return float("-inf"), 0.0
    log_abs = float(0.5 * np.sum(np.log(cos_phi_sq)))
    return log_abs, float(math.exp(log_abs))


def stationary_modes(h_f1: float) -> np.ndarray:
    """Wavenumbers where the deviation integrand vanishes for any start.

    Always contains 0 and pi; for |h_f1| <= 1 the zero crossing of the
    post-quench cos 2theta at arccos(-h_f1) joins them.
    """
    modes = [0.0, math.pi]
    if abs(h_f1) <= 1.0:
        extra = math.acos(-h_f1)
        if all(abs(extra - m) > 1e-12 for m in modes):
            modes.append(extra)
    return np.array(sorted(modes))


def stationary_mode_residual(delta: float, h_i: float, h_f1: float, kappa: float) -> float:
    """Value of cos2theta_f1 * (1 - cos2phi1) at one wavenumber."""
    ci, si, _ = angle_pair(ModelParams(delta, h_i), kappa)
    cf, sf, _ = angle_pair(ModelParams(delta, h_f1), kappa)
    cos2phi1, _ = angle_difference(cf, sf, ci, si)
    return float(cf * (1.0 - cos2phi1))
