"""Command-line entry point: ``torusq run|compare|orbits``."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .classical import baker_orbits, cat_orbits
from .config import ConfigError, load_config
from .experiments import run_comparison, run_decay_experiment
from .open_dynamics import PositivityError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torusq", description="Open quantum maps on the torus.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--outdir", type=Path, default=None, help="override the config's output directory")
    common.add_argument("--quiet", action="store_true", help="only report errors")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[common], help="purity/fidelity decay of one initial state")
    run.add_argument("config", type=Path)
    cmp_ = sub.add_parser("compare", parents=[common], help="eigenstate vs POM vs scar under the same noise")
    cmp_.add_argument("config", type=Path)
    orb = sub.add_parser("orbits", parents=[common], help="list primitive periodic orbits as exact fractions")
    orb.add_argument("map", choices=["baker", "cat"])
    orb.add_argument("period", type=int)
    return parser


def _orbits(kind: str, period: int) -> list[str]:
    orbits = baker_orbits(period) if kind == "baker" else cat_orbits(period)
    lines = []
    for i, orbit in enumerate(orbits):
        label = orbit.source if kind == "baker" else str(i)
        lines.append(f"{label}: " + " ".join(str(pt) for pt in orbit.points))
    return lines


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO, format="%(message)s")
    try:
        if args.command == "orbits":
            lines = _orbits(args.map, args.period)
            if args.outdir is not None:
                args.outdir.mkdir(parents=True, exist_ok=True)
                (args.outdir / f"orbits_{args.map}_{args.period}.txt").write_text("\n".join(lines) + "\n")
            if not args.quiet or args.outdir is None:
                print("\n".join(lines))
            return 0
        cfg = load_config(args.config)
        runner = run_decay_experiment if args.command == "run" else run_comparison
        written = runner(cfg, args.outdir)
    except ConfigError as exc:
        print(f"torusq: config error: {exc}", file=sys.stderr)
        return 2
    except PositivityError as exc:
        print(f"torusq: {exc}", file=sys.stderr)
        return 3
    except (OSError, ValueError) as exc:
        print(f"torusq: {exc}", file=sys.stderr)
        return 1
    if not args.quiet:
        for path in written:
            print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
