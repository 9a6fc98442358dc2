# rsma_mc/cli.py
"""Experiment CLI.

    rsma-mc <experiment> --config cfg.txt --out curve.csv
            [--schemes mc-rsma,mc-tdm,sc-tdm] [--seed N] [--trace] [--no-plot]

Exit codes: 0 success, 2 config error, 3 every grid point infeasible.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import experiments, plotting
from .experiments import SweepSpec
from .model import ConfigError, load_config

_COMMANDS = {
    "stability-region": "StabilityRegion",
    "rate-loss": "RateLossVsBlocklength",
    "rate-vs-snr": "RateVsSnr",
}

_DEFAULT_GRIDS = {
    "StabilityRegion": experiments.DEFAULT_HC_GRID,
    "RateLossVsBlocklength": experiments.DEFAULT_BLOCKLENGTH_GRID,
    "RateVsSnr": experiments.DEFAULT_SNR_GRID,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rsma-mc",
        description="Rate-splitting multi-connectivity experiment sweeps",
    )
    sub = parser.add_subparsers(dest="experiment", required=True)
    for name, label in _COMMANDS.items():
        p = sub.add_parser(name, help=f"run the {label} sweep")
        p.add_argument("--config", required=True, help="flat key=value config file")
        p.add_argument("--out", required=True, help="output CSV path")
        p.add_argument(
            "--schemes", default=",".join(experiments.SCHEMES),
            help="comma-separated subset of mc-rsma,mc-tdm,sc-tdm",
        )
        p.add_argument(
            "--seed", type=int, default=0,
            help="reserved for stochastic extensions; sweeps are deterministic",
        )
        p.add_argument(
            "--a-hc", type=float, default=experiments.DEFAULT_FIXED_A_HC,
            help="fixed HC arrival rate for rate-loss / rate-vs-snr sweeps",
        )
        p.add_argument(
            "--trace", action="store_true",
            help="dump per-iteration solver CSVs next to the output",
        )
        p.add_argument(
            "--no-plot", action="store_true",
            help="skip rendering the figure next to the CSV",
        )
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    experiment = _COMMANDS[args.experiment]
    try:
        cfg = load_config(args.config)
        schemes = tuple(s.strip() for s in args.schemes.split(",") if s.strip())
        spec = SweepSpec(
            experiment=experiment,
            grid=_DEFAULT_GRIDS[experiment],
            schemes=schemes,
            fixed_a_hc=args.a_hc,
        )
    except (ConfigError, OSError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    out = Path(args.out)
    trace_dir = out.with_name(out.stem + "_trace") if args.trace else None
    rows = experiments.run_sweep(spec, cfg, trace_dir=trace_dir)
    if not rows:
        print("all grid points infeasible", file=sys.stderr)
        return 3
    experiments.write_csv(rows, experiment, out)
    print(f"wrote {len(rows)} rows to {out}")
    if not args.no_plot:
        fig_path = out.with_suffix(".png")
        plotting.plot_sweep(rows, experiment, fig_path)
        print(f"wrote figure to {fig_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
