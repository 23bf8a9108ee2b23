"""Produce every figure CSV through the CLI, plus the plotkit manifest.

Runs the `xyquench` subcommands in-process and writes content-named CSV
files into the data directory, then a ``figures.manifest.json`` mapping
each figure id to its panels, series and output file.  The front end
consumes only these artifacts.

Typical use:

    python scripts/make_figure_data.py --data-dir out/figure-data
    python scripts/make_figure_data.py --quick      # coarse grids, smoke run
"""

from __future__ import annotations

import argparse
import json
import pathlib
import sys

from xyquench.cli import main as cli_main

DELTAS = (1.0, 0.5)


def tag(value: float) -> str:
    return f"{value:g}"


def run(args: list[str]) -> None:
    code = cli_main(args)
    if code != 0:
        raise SystemExit(f"cli failed ({code}): {' '.join(args)}")


def build_data(data_dir: pathlib.Path, grid_size: int, sweep_step: float, t_step: float,
               samples: int, threads: int) -> dict:
    data_dir.mkdir(parents=True, exist_ok=True)
    grid = ["--grid-size", str(grid_size), "--threads", str(threads)]

    def out(name: str) -> list[str]:
        return ["--output", str(data_dir / name)]

    # equilibrium curves
    for delta in (0.0, 0.5, 1.0):
        run(["equilibrium", "--delta", str(delta), "--h-range", "0:2:0.01", *grid,
             *out(f"eq_d{tag(delta)}.csv")])

    # single-quench time traces
    for delta in DELTAS:
        for h_f1 in (2.0, 0.8):
            run(["single-series", "--delta", str(delta), "--h-i", "0.5",
                 "--h-f1", str(h_f1), "--times", "0:40:801", *grid,
                 *out(f"series_d{tag(delta)}_hf{tag(h_f1)}.csv")])

    # long-time sweeps over the final field
    for delta in DELTAS:
        for h_i in (0.2, 4.0, 1.5):
            run(["single-sweep", "--delta", str(delta), "--h-i", str(h_i),
                 "--h-f1-range", f"0.01:4:{sweep_step}", *grid,
                 *out(f"sweep_d{tag(delta)}_hi{tag(h_i)}.csv")])

    # ergodic-region width curves
    for delta in DELTAS:
        run(["width", "--delta", str(delta), "--h-i-range", "0.1:1.2:0.02", *grid,
             *out(f"width_d{tag(delta)}.csv")])

    # ground-state overlap curves
    for delta in DELTAS:
        for h_i in (0.2, 0.5, 0.8, 1.0, 2.0):
            run(["c0", "--delta", str(delta), "--h-i", str(h_i),
                 "--h-f1-range", f"0.01:4:{sweep_step}", "--n", "100",
                 "--threads", str(threads),
                 *out(f"c0_d{tag(delta)}_hi{tag(h_i)}.csv")])

    # dwell-time sweeps of the return cycle
    cyclic_cases = {0.5: (0.2, 0.5, 1.0, 2.0, 4.0), 4.0: (0.2, 1.0, 2.0), 1.5: (0.5, 1.0, 2.0)}
    for delta in DELTAS:
        for h_i, h_f1_list in cyclic_cases.items():
            for h_f1 in h_f1_list:
                run(["cyclic-sweep", "--delta", str(delta), "--h-i", str(h_i),
                     "--h-f1", str(h_f1), "--t-range", f"0:20:{t_step}",
                     "--samples", str(samples), *grid,
                     *out(f"cyclic_d{tag(delta)}_hi{tag(h_i)}_hf{tag(h_f1)}.csv")])

    return manifest_dict()


def series(csv: str, label: str) -> dict:
    return {"csv": csv, "label": label}


def panel(label, x_col, y_col, x_label, y_label, entries) -> dict:
    return {
        "label": label,
        "xColumn": x_col,
        "yColumn": y_col,
        "xLabel": x_label,
        "yLabel": y_label,
        "series": entries,
    }


def manifest_dict() -> dict:
    eq_series = [series(f"eq_d{tag(d)}.csv", f"delta={d}") for d in (0.0, 0.5, 1.0)]
    figures = []
    figures.append({
        "id": "fig1",
        "title": "Equilibrium observables vs transverse field",
        "output": "fig1.svg",
        "panels": [
            panel("(a)", "h", "m_z", "h", "M_z", eq_series),
            panel("(b)", "h", "s_xx", "h", "S_xx", eq_series),
        ],
    })

    fig2_panels = []
    for label, delta, h_f1 in (("(a)", 1.0, 2.0), ("(b)", 0.5, 2.0), ("(c)", 1.0, 0.8), ("(d)", 0.5, 0.8)):
        fig2_panels.append(panel(
            label, "t", "mz", "t", "M_z",
            [series(f"series_d{tag(delta)}_hf{tag(h_f1)}.csv", f"delta={delta}, 0.5->{h_f1}")],
        ))
    for label, delta in (("(e)", 1.0), ("(f)", 0.5)):
        fig2_panels.append(panel(
            label, "h_f1", "mz_bar", "h_f1", "M_z",
            [
                series(f"sweep_d{tag(delta)}_hi0.2.csv", "long-time"),
                {"csv": f"sweep_d{tag(delta)}_hi0.2.csv", "label": "equilibrium", "yColumn": "mz_eq"},
            ],
        ))
    figures.append({
        "id": "fig2",
        "title": "Magnetization after quenches from the ferromagnetic phase",
        "output": "fig2.svg",
        "panels": fig2_panels,
    })

    figures.append({
        "id": "fig3",
        "title": "Ergodic-region width vs starting field",
        "output": "fig3.svg",
        "panels": [
            panel(lbl, "h_i", "width", "h_i", "width",
                  [series(f"width_d{tag(d)}.csv", f"delta={d}")])
            for lbl, d in (("(a)", 1.0), ("(b)", 0.5))
        ],
    })

    figures.append({
        "id": "fig4",
        "title": "Long-time magnetization for quenches from the paramagnetic phase",
        "output": "fig4.svg",
        "panels": [
            panel(lbl, "h_f1", "mz_bar", "h_f1", "M_z",
                  [
                      series(f"sweep_d{tag(d)}_hi4.csv", "long-time"),
                      {"csv": f"sweep_d{tag(d)}_hi4.csv", "label": "equilibrium", "yColumn": "mz_eq"},
                  ])
            for lbl, d in (("(a)", 1.0), ("(b)", 0.5))
        ],
    })

    figures.append({
        "id": "fig5",
        "title": "Ground-state overlap vs final field",
        "output": "fig5.svg",
        "panels": [
            panel(lbl, "h_f1", "abs_c0", "h_f1", "|C0|",
                  [series(f"c0_d{tag(d)}_hi{tag(hi)}.csv", f"h_i={hi}")
                   for hi in (0.2, 0.5, 0.8, 1.0, 2.0)])
            for lbl, d in (("(a)", 1.0), ("(b)", 0.5))
        ],
    })

    fig6_panels = []
    for label, delta, h_i in (("(a)", 1.0, 0.2), ("(b)", 0.5, 0.2), ("(c)", 1.0, 1.5), ("(d)", 0.5, 1.5)):
        fig6_panels.append(panel(
            label, "h_f1", "sxx_bar", "h_f1", "S_xx",
            [
                series(f"sweep_d{tag(delta)}_hi{tag(h_i)}.csv", "long-time"),
                {"csv": f"sweep_d{tag(delta)}_hi{tag(h_i)}.csv", "label": "equilibrium", "yColumn": "sxx_eq"},
            ],
        ))
    figures.append({
        "id": "fig6",
        "title": "Long-time XX correlation vs final field",
        "output": "fig6.svg",
        "panels": fig6_panels,
    })

    fig7_panels = []
    for label, delta, h_i, hfs in (
        ("(a)", 1.0, 0.5, (0.2, 1.0, 4.0)),
        ("(b)", 0.5, 0.5, (0.2, 1.0, 4.0)),
        ("(c)", 1.0, 4.0, (0.2, 1.0, 2.0)),
        ("(d)", 0.5, 4.0, (0.2, 1.0, 2.0)),
    ):
        fig7_panels.append(panel(
            label, "T", "mz_bar", "T", "M_z",
            [series(f"cyclic_d{tag(delta)}_hi{tag(h_i)}_hf{tag(hf)}.csv", f"h_f1={hf}")
             for hf in hfs],
        ))
    figures.append({
        "id": "fig7",
        "title": "Long-time magnetization of return cycles vs dwell time",
        "output": "fig7.svg",
        "panels": fig7_panels,
    })

    fig8_panels = []
    for label, delta, h_i in (("(a)", 1.0, 0.5), ("(b)", 0.5, 0.5), ("(c)", 1.0, 1.5), ("(d)", 0.5, 1.5)):
        fig8_panels.append(panel(
            label, "T", "sxx_bar", "T", "S_xx",
            [series(f"cyclic_d{tag(delta)}_hi{tag(h_i)}_hf{tag(hf)}.csv", f"h_f1={hf}")
             for hf in (0.5, 1.0, 2.0)],
        ))
    figures.append({
        "id": "fig8",
        "title": "Long-time XX correlation of return cycles vs dwell time",
        "output": "fig8.svg",
        "panels": fig8_panels,
    })

    return {"figures": figures}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--data-dir", default="out/figure-data")
    parser.add_argument("--grid-size", type=int, default=16384)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--quick", action="store_true",
                        help="coarse steps and small grid for a fast smoke run")
    args = parser.parse_args(argv)
    grid_size = 512 if args.quick else args.grid_size
    sweep_step = 0.05 if args.quick else 0.01
    t_step = 0.5 if args.quick else 0.05
    samples = 2001 if args.quick else 50_000
    data_dir = pathlib.Path(args.data_dir)
    manifest = build_data(data_dir, grid_size, sweep_step, t_step, samples, args.threads)
    manifest_path = data_dir / "figures.manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"wrote {manifest_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
