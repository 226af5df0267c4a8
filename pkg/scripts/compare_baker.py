"""Purity and fidelity decay of eigenstate, orbit mode and scar for the
baker map, plus the scar/eigenstate overlap."""
import argparse
from pathlib import Path

from torusq.config import load_config
from torusq.experiments import run_comparison

HERE = Path(__file__).resolve().parent


def compare(default_config: str, doc: str):
    ap = argparse.ArgumentParser(description=doc)
    ap.add_argument("--config", type=Path, default=HERE.parent / "configs" / default_config)
    ap.add_argument("--outdir", type=Path, default=None)
    args = ap.parse_args()
    cfg = load_config(args.config)
    outdir = args.outdir or Path("out") / args.config.stem
    run_comparison(cfg, outdir)
    print((outdir / "comparison.csv").read_text(), end="")
    print((outdir / "overlap.txt").read_text(), end="")


if __name__ == "__main__":
    compare("baker_scar.cfg", __doc__)
