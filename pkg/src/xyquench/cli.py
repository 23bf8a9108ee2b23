"""Command-line front end producing deterministic CSV artifacts.

Every subcommand resolves its configuration, computes rows through the
library, and writes an RFC-4180-style CSV with `#`-prefixed comment lines
recording the resolved configuration.  Floats are printed in scientific
notation with 12 significant digits.  Sweep rows may be computed by a
thread pool; results are always emitted in input order, so identical
configurations yield byte-identical files at any thread count.

Exit status: 0 on success (for oracle-check, only if the formula and the
dense oracle agree within tolerance), 1 on I/O failure, 2 on bad flags.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import cyclic as cyc
from . import ed
from . import quench as qd
from .spectral import (
    GridScheme,
    ModelParams,
    MomentumGrid,
    equilibrium_observables,
    finite_ns_grid,
    midpoint_grid,
)

__all__ = ["RunConfig", "run", "main"]

ORACLE_TOL = 1e-8
THREADS_ENV = "XYQUENCH_THREADS"


class ConfigError(Exception):
    """Bad flag value; carries the flag name for the error message."""

    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


@dataclass
class RunConfig:
    """Resolved settings of one CLI invocation."""

    subcommand: str
    delta: float = 1.0
    h_i: float | None = None
    h_f1: float | None = None
    h_f2: float | None = None
    dwell: float | None = None
    h_values: np.ndarray | None = None
    t_values: np.ndarray | None = None
    times: np.ndarray | None = None
    grid_scheme: str = "midpoint"
    grid_size: int = 16384
    threshold: float = 0.01
    oracle_n: int = 8
    scan: tuple[float, float] = (0.01, 1.0)
    scan_step: float = 0.005
    window_offset: float = 50.0
    window_length: float = 500.0
    samples: int = 50_000
    output: str = "-"
    threads: int = 1
    extras: dict = field(default_factory=dict)

    def grid(self) -> MomentumGrid:
        if self.grid_scheme == "midpoint":
            return midpoint_grid(self.grid_size)
        if self.grid_scheme == "finite-ns":
            return finite_ns_grid(self.grid_size)
        raise ConfigError("--grid-scheme", f"unknown scheme {self.grid_scheme!r}")


def parse_value_range(text: str, flag: str) -> np.ndarray:
    """START:STOP:STEP with the stop included within half a step."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(flag, f"expected START:STOP:STEP, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise ConfigError(flag, f"non-numeric range {text!r}") from None
    if step <= 0.0:
        raise ConfigError(flag, "step must be positive")
    if stop < start:
        raise ConfigError(flag, "stop must be >= start")
    count = int(math.floor((stop - start) / step + 0.5)) + 1
    return start + step * np.arange(count)


def parse_time_grid(text: str, flag: str) -> np.ndarray:
    """START:STOP:COUNT uniform time samples."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(flag, f"expected START:STOP:COUNT, got {text!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError:
        raise ConfigError(flag, f"non-numeric time grid {text!r}") from None
    if count < 1:
        raise ConfigError(flag, "count must be >= 1")
    if stop < start:
        raise ConfigError(flag, "stop must be >= start")
    if count == 1:
        return np.array([start])
    return np.linspace(start, stop, count)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.11e}"
    return str(value)


def _config_comment(config: RunConfig) -> str:
    # output path and worker count do not influence the data, and identical
    # configurations must stay byte-identical at any thread count
    skip = {"extras", "output", "threads"}
    items = []
    for name, value in vars(config).items():
        if name in skip or value is None:
            continue
        if isinstance(value, np.ndarray):
            if value.size > 8:
                value = f"[{value[0]:.6g}..{value[-1]:.6g};n={value.size}]"
            else:
                value = "[" + ",".join(f"{v:.6g}" for v in value) + "]"
        elif isinstance(value, tuple):
            value = ":".join(f"{v:.6g}" for v in value)
        items.append(f"{name}={value}")
    return "# xyquench " + " ".join(items)


def _pool_map(func, inputs, threads: int):
    if threads <= 1:
        return [func(x) for x in inputs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, inputs))


def _cmd_equilibrium(config: RunConfig):
    grid = config.grid()

    def row(h):
        mz, sxx = equilibrium_observables(ModelParams(config.delta, float(h)), grid)
        return (float(h), config.delta, mz, sxx)

    rows = _pool_map(row, config.h_values, config.threads)
    return "h,delta,m_z,s_xx", rows, []


def _cmd_single_series(config: RunConfig):
    grid = config.grid()
    protocol = qd.QuenchProtocol(config.delta, config.h_i, config.h_f1)
    series = qd.evolve_single(protocol, grid, config.times)
    rows = list(zip(series.times, series.mz, series.sxx))
    return "t,mz,sxx", rows, []


def _cmd_single_sweep(config: RunConfig):
    grid = config.grid()

    def row(h_f1):
        rep = qd.ergodicity_report(
            qd.QuenchProtocol(config.delta, config.h_i, float(h_f1)), grid, config.threshold
        )
        return (
            rep.h_f1,
            rep.long_time_mz,
            rep.equilibrium_mz,
            rep.long_time_sxx,
            rep.equilibrium_sxx,
            rep.deviation_mz,
            rep.deviation_sxx,
            rep.is_ergodic_mz,
            rep.is_ergodic_sxx,
        )

    rows = _pool_map(row, config.h_values, config.threads)
    header = "h_f1,mz_bar,mz_eq,sxx_bar,sxx_eq,dev_mz,dev_sxx,ergodic_mz,ergodic_sxx"
    return header, rows, []


def _cmd_width(config: RunConfig):
    grid = config.grid()

    def row(h_i):
        width = qd.ergodic_width(
            config.delta, float(h_i), grid, config.threshold, config.scan, config.scan_step
        )
        return (float(h_i), width)

    rows = _pool_map(row, config.h_values, config.threads)
    return "h_i,width", rows, []


def _cmd_c0(config: RunConfig):
    def row(h_f1):
        log_abs, abs_c0 = qd.overlap_c0(config.delta, config.h_i, float(h_f1), config.oracle_n)
        return (float(h_f1), log_abs, abs_c0)

    rows = _pool_map(row, config.h_values, config.threads)
    return "h_f1,log_abs_c0,abs_c0", rows, []


def _cmd_modes(config: RunConfig):
    rows = []
    for h_f1 in config.h_values:
        for kappa in qd.stationary_modes(float(h_f1)):
            rows.append((float(h_f1), float(kappa)))
    return "h_f1,kappa_star", rows, []


def _cmd_cyclic_series(config: RunConfig):
    grid = config.grid()
    h_f2 = config.h_i if config.h_f2 is None else config.h_f2
    protocol = qd.QuenchProtocol(
        config.delta, config.h_i, config.h_f1, h_f2=h_f2, dwell_time=config.dwell
    )
    series = cyc.evolve_cyclic(protocol, grid, config.times)
    rows = list(zip(series.times, series.mz, series.sxx))
    return "t,mz,sxx", rows, []


def _cmd_cyclic_sweep(config: RunConfig):
    grid = config.grid()
    window = (config.window_offset, config.window_length)

    def row(t_dwell):
        point = cyc.sweep_dwell_time(
            config.delta,
            config.h_i,
            config.h_f1,
            [float(t_dwell)],
            grid,
            window=window,
            samples=config.samples,
            threshold=config.threshold,
        )[0]
        return (
            point.dwell_time,
            point.mz_bar,
            point.sxx_bar,
            point.deviation_mz,
            point.deviation_sxx,
        )

    rows = _pool_map(row, config.t_values, config.threads)
    return "T,mz_bar,sxx_bar,dev_mz,dev_sxx", rows, []


def _cmd_oracle_check(config: RunConfig):
    n = config.oracle_n
    grid = finite_ns_grid(n)
    system_i = ed.build_hamiltonian(n, config.delta, config.h_i)
    system_f = ed.build_hamiltonian(n, config.delta, config.h_f1)
    _, gs, _ = ed.ground_state(system_i)
    times = config.times
    if config.dwell is not None:
        h_f2 = config.h_i if config.h_f2 is None else config.h_f2
        protocol = qd.QuenchProtocol(
            config.delta, config.h_i, config.h_f1, h_f2=h_f2, dwell_time=config.dwell
        )
        formula = cyc.evolve_cyclic(protocol, grid, times)
        system_2 = ed.build_hamiltonian(n, config.delta, h_f2)
        oracle = ed.evolve_observables(gs, system_f, times, system_2, config.dwell)
    else:
        protocol = qd.QuenchProtocol(config.delta, config.h_i, config.h_f1)
        formula = qd.evolve_single(protocol, grid, times)
        oracle = ed.evolve_observables(gs, system_f, times)
    rows = []
    for i, t in enumerate(times):
        rows.append((float(t), formula.mz[i], formula.sxx[i], "formula"))
        rows.append((float(t), oracle.mz[i], oracle.sxx[i], "oracle"))
    dev_mz = float(np.max(np.abs(formula.mz - oracle.mz)))
    dev_sxx = float(np.max(np.abs(formula.sxx - oracle.sxx)))
    ok = dev_mz < ORACLE_TOL and dev_sxx < ORACLE_TOL
    trailer = [
        f"# max_abs_dev mz={dev_mz:.3e} sxx={dev_sxx:.3e} tol={ORACLE_TOL:.0e} pass={str(ok).lower()}"
    ]
    config.extras["oracle_pass"] = ok
    config.extras["oracle_dev"] = max(dev_mz, dev_sxx)
    return "t,mz,sxx,source", rows, trailer


_HANDLERS = {
    "equilibrium": _cmd_equilibrium,
    "single-series": _cmd_single_series,
    "single-sweep": _cmd_single_sweep,
    "width": _cmd_width,
    "c0": _cmd_c0,
    "modes": _cmd_modes,
    "cyclic-series": _cmd_cyclic_series,
    "cyclic-sweep": _cmd_cyclic_sweep,
    "oracle-check": _cmd_oracle_check,
}


def run(config: RunConfig) -> int:
    """Execute one resolved configuration and write its CSV."""
    try:
        header, rows, trailer = _HANDLERS[config.subcommand](config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    lines = [_config_comment(config), header]
    lines += [",".join(_fmt(cell) for cell in row) for row in rows]
    lines += trailer
    text = "\n".join(lines) + "\n"
    try:
        if config.output == "-":
            sys.stdout.write(text)
        else:
            out_dir = os.path.dirname(config.output)
            if out_dir:
                os.makedirs(out_dir, exist_ok=True)
            with open(config.output, "w", encoding="ascii") as handle:
                handle.write(text)
    except OSError as exc:
        print(f"error: cannot write {config.output}: {exc}", file=sys.stderr)
        return 1
    if config.subcommand == "oracle-check":
        dev = config.extras["oracle_dev"]
        status = "PASS" if config.extras["oracle_pass"] else "FAIL"
        print(f"oracle-check {status}: max |formula - oracle| = {dev:.3e}", file=sys.stderr)
        return 0 if config.extras["oracle_pass"] else 1
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xyquench",
        description="Quench dynamics of the transverse-field XY chain (CSV output).",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, grid=True):
        p.add_argument("--delta", type=float, default=1.0, help="anisotropy")
        if grid:
            p.add_argument(
                "--grid-scheme", choices=["midpoint", "finite-ns"], default="midpoint"
            )
            p.add_argument("--grid-size", type=int, default=16384)
        p.add_argument("--output", "-o", default="-", help="CSV path, '-' for stdout")
        p.add_argument(
            "--threads",
            type=int,
            default=int(os.environ.get(THREADS_ENV, "1")),
            help=f"worker threads for sweep rows (env {THREADS_ENV})",
        )

    p = sub.add_parser("equilibrium", help="zero-temperature observables vs field")
    common(p)
    p.add_argument("--h-range", required=True, help="START:STOP:STEP")

    p = sub.add_parser("single-series", help="time series after one quench")
    common(p)
    p.add_argument("--h-i", type=float, required=True)
    p.add_argument("--h-f1", type=float, required=True)
    p.add_argument("--times", required=True, help="START:STOP:COUNT")

    p = sub.add_parser("single-sweep", help="long-time averages vs final field")
    common(p)
    p.add_argument("--h-i", type=float, required=True)
    p.add_argument("--h-f1-range", required=True, help="START:STOP:STEP")
    p.add_argument("--threshold", type=float, default=0.01)

    p = sub.add_parser("width", help="ergodic-region width vs initial field")
    common(p)
    p.add_argument("--h-i-range", required=True, help="START:STOP:STEP")
    p.add_argument("--threshold", type=float, default=0.01)
    p.add_argument("--scan", default="0.01:1.0", help="LO:HI half-open scan of h_f1")
    p.add_argument("--scan-step", type=float, default=0.005)

    p = sub.add_parser("c0", help="ground-state overlap magnitude vs final field")
    common(p, grid=False)
    p.add_argument("--h-i", type=float, required=True)
    p.add_argument("--h-f1-range", required=True, help="START:STOP:STEP")
    p.add_argument("--n", type=int, default=100, help="ring size for the overlap")

    p = sub.add_parser("modes", help="stationary wavenumbers vs final field")
    common(p, grid=False)
    p.add_argument("--h-f1-range", required=True, help="START:STOP:STEP")

    p = sub.add_parser("cyclic-series", help="time series after a double quench")
    common(p)
    p.add_argument("--h-i", type=float, required=True)
    p.add_argument("--h-f1", type=float, required=True)
    p.add_argument("--h-f2", type=float, default=None, help="defaults to h_i")
    p.add_argument("--dwell", type=float, required=True, help="time spent at h_f1")
    p.add_argument("--times", required=True, help="START:STOP:COUNT (all >= dwell)")

    p = sub.add_parser("cyclic-sweep", help="window means vs dwell time")
    common(p)
    p.add_argument("--h-i", type=float, required=True)
    p.add_argument("--h-f1", type=float, required=True)
    p.add_argument("--t-range", required=True, help="START:STOP:STEP of dwell times")
    p.add_argument("--threshold", type=float, default=0.01)
    p.add_argument("--window-offset", type=float, default=50.0)
    p.add_argument("--window-length", type=float, default=500.0)
    p.add_argument("--samples", type=int, default=50_000)

    p = sub.add_parser("oracle-check", help="formula vs dense diagonalization")
    common(p, grid=False)
    p.add_argument("--n", type=int, default=8, help="ring size (even, <= 12)")
    p.add_argument("--h-i", type=float, required=True)
    p.add_argument("--h-f1", type=float, required=True)
    p.add_argument("--h-f2", type=float, default=None, help="defaults to h_i (cyclic)")
    p.add_argument("--dwell", type=float, default=None, help="cyclic dwell time")
    p.add_argument("--times", "--t", dest="times", required=True, help="START:STOP:COUNT")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    config = RunConfig(subcommand=args.subcommand)
    config.delta = getattr(args, "delta", 1.0)
    config.output = getattr(args, "output", "-")
    config.threads = max(1, getattr(args, "threads", 1))
    if hasattr(args, "grid_scheme"):
        config.grid_scheme = args.grid_scheme
        config.grid_size = args.grid_size
        if config.grid_size < 1:
            raise ConfigError("--grid-size", "must be >= 1")
        if config.grid_scheme == "finite-ns" and config.grid_size % 2 != 0:
            raise ConfigError("--grid-size", "finite-ns needs an even site count")
    for name in ("h_i", "h_f1", "h_f2", "dwell"):
        if hasattr(args, name):
            setattr(config, name, getattr(args, name))
    if hasattr(args, "threshold"):
        config.threshold = args.threshold
        if config.threshold <= 0.0:
            raise ConfigError("--threshold", "must be positive")
    if hasattr(args, "h_range"):
        config.h_values = parse_value_range(args.h_range, "--h-range")
    if hasattr(args, "h_f1_range"):
        config.h_values = parse_value_range(args.h_f1_range, "--h-f1-range")
    if hasattr(args, "h_i_range"):
        config.h_values = parse_value_range(args.h_i_range, "--h-i-range")
    if hasattr(args, "t_range"):
        config.t_values = parse_value_range(args.t_range, "--t-range")
    if hasattr(args, "times"):
        config.times = parse_time_grid(args.times, "--times")
    if hasattr(args, "scan"):
        parts = args.scan.split(":")
        if len(parts) != 2:
            raise ConfigError("--scan", f"expected LO:HI, got {args.scan!r}")
        config.scan = (float(parts[0]), float(parts[1]))
        config.scan_step = args.scan_step
        if config.scan_step <= 0.0:
            raise ConfigError("--scan-step", "must be positive")
    if hasattr(args, "n"):
        config.oracle_n = args.n
        if config.oracle_n < 2 or config.oracle_n % 2 != 0:
            raise ConfigError("--n", "must be a positive even integer")
    if hasattr(args, "window_offset"):
        config.window_offset = args.window_offset
        config.window_length = args.window_length
        config.samples = args.samples
        if config.window_length <= 0.0:
            raise ConfigError("--window-length", "must be positive")
        if config.samples < 2:
            raise ConfigError("--samples", "must be >= 2")
    if hasattr(args, "dwell") and args.subcommand == "cyclic-series" and args.dwell < 0.0:
        raise ConfigError("--dwell", "must be >= 0")
    return config


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
