"""Command-line entry point: run sweeps, validate configs, print defaults."""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .config import ConfigError, load_config, render_config
from .harness import run_sweep, write_outputs


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rtcsim",
        description="Sensor-to-control-object latency simulator over LTE/mmWave access",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the configured sweep and write CSV outputs")
    run.add_argument("--config", type=Path, default=None, help="key = value config file")
    run.add_argument("--out", type=Path, default=None, help="output directory (default results/<timestamp>)")
    run.add_argument("--trace-snr", action="store_true", help="emit snr_trace.csv for DRN1/LCO1")
    run.add_argument("--trace-alloc", action="store_true", help="emit per-subframe allocation trace")
    run.add_argument("--seed", type=int, default=None, help="override root_seed")
    run.add_argument("--backhaul", choices=["lte", "mmwave"], default=None)
    run.add_argument("--pairs", default=None, help="comma-separated pair counts")
    run.add_argument("--payload", type=int, default=None, help="payload bytes")
    run.add_argument("--jobs", type=int, default=1, help="parallel (n_pairs, run) points")
    run.add_argument(
        "--dump-deployment", action="store_true",
        help="write deployment_n<pairs>.csv (run 0 node placements) per grid point",
    )

    val = sub.add_parser("validate", help="check a config file without running")
    val.add_argument("--config", type=Path, required=True)

    dfl = sub.add_parser("defaults", help="print the fully resolved default config")
    dfl.add_argument("--backhaul", choices=["lte", "mmwave"], default=None)
    return parser


def _overrides(args: argparse.Namespace) -> dict[str, str]:
    overrides: dict[str, str] = {}
    if getattr(args, "seed", None) is not None:
        overrides["root_seed"] = str(args.seed)
    if getattr(args, "backhaul", None):
        overrides["backhaul"] = args.backhaul
    if getattr(args, "pairs", None):
        overrides["n_pairs_list"] = args.pairs
    if getattr(args, "payload", None) is not None:
        overrides["payload_bytes"] = str(args.payload)
    return overrides


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "defaults":
            cfg = load_config(None, _overrides(args))
            sys.stdout.write(render_config(cfg))
            return 0
        if args.command == "validate":
            cfg = load_config(args.config)
            sys.stdout.write(render_config(cfg))
            return 0
        cfg = load_config(args.config, _overrides(args))
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    out_dir = args.out or Path("results") / time.strftime("%Y%m%d-%H%M%S")
    result = run_sweep(
        cfg, trace_snr=args.trace_snr, trace_alloc=args.trace_alloc, jobs=max(1, args.jobs)
    )
    paths = write_outputs(
        cfg, result, out_dir, trace_snr=args.trace_snr, trace_alloc=args.trace_alloc
    )
    if args.dump_deployment:
        from .core import StreamFactory
        from .topology import deployment_csv, place_random

        for n_pairs in cfg.n_pairs_list:
            dep = place_random(n_pairs, cfg.plane_side_m, StreamFactory(cfg.root_seed, 0))
            path = Path(out_dir) / f"deployment_n{n_pairs}.csv"
            path.write_text(deployment_csv(dep), encoding="utf-8")
            paths[f"deployment_n{n_pairs}"] = path
    for name in sorted(paths):
        print(f"{name:8s} {paths[name]}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
