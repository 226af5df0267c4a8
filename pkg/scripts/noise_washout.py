"""Wash-out of the interference fringes of a cat-state superposition.

Writes Wigner frames (PGM and CSV) and decay.csv, then prints the Wigner
negativity of each frame for the requested couplings.
"""
import argparse
import dataclasses
from pathlib import Path

import numpy as np

from torusq.config import load_config
from torusq.experiments import build_setup, run_decay_experiment
from torusq.open_dynamics import apply_noise_fast, projector
from torusq.phase_space import negativity, smooth_wigner

HERE = Path(__file__).resolve().parent


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", type=Path, default=HERE.parent / "configs" / "superposition.cfg")
    ap.add_argument("--outdir", type=Path, default=Path("out/noise_washout"))
    ap.add_argument("--eps", type=float, nargs="+", default=[0.05, 0.1])
    args = ap.parse_args()

    base = load_config(args.config)
    for eps in args.eps:
        cfg = dataclasses.replace(base, epsilon=eps)
        run_decay_experiment(cfg, args.outdir / f"eps{eps:g}")
        setup = build_setup(cfg)
        rho = projector(setup.psi)
        neg = []
        for _ in range(cfg.steps + 1):
            neg.append(negativity(smooth_wigner(rho, setup.prop.space)))
            rho = apply_noise_fast(rho, setup.channel)
        print(f"eps={eps:g}  negativity " + " ".join(f"{x:.5f}" for x in neg))
        print(f"          step-1 / step-0 = {neg[1] / neg[0]:.3e}  monotone={bool(np.all(np.diff(neg) < 0))}")


if __name__ == "__main__":
    main()
