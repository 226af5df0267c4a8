"""Config-driven decay and comparison runs that write CSV/PGM files."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .classical import PeriodicOrbit, baker_orbit_from_bits, cat_orbit
from .config import ExperimentConfig
from .kinematics import coherent_states
from .open_dynamics import NoiseChannel, decay_series, evolve, fidelity, noise_coefficients, purity
from .phase_space import PhaseSpaceGrid, husimi, husimi_state, smooth_wigner, write_grid_csv, write_pgm
from .quantum import Propagator, eigendecompose, quantize
from .scars import BranchChoice, best_branch

log = logging.getLogger(__name__)


def fmt(x: float) -> str:
    return f"{x:.17g}"


def write_csv(path: Path, header: str, rows) -> Path:
    with open(path, "w", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(v if isinstance(v, str) else fmt(v) for v in row) + "\n")
    return path


def resolve_orbit(cfg: ExperimentConfig) -> PeriodicOrbit:
    if cfg.orbit is None:
        raise ValueError("config has no orbit")
    if cfg.map == "baker":
        return baker_orbit_from_bits(cfg.orbit)
    return cat_orbit(*cfg.orbit)


def superposition(prop: Propagator, centers) -> np.ndarray:
    """Equal-weight, zero-phase sum of coherent states, normalized."""
    q = np.array([float(c.q) for c in centers])
    p = np.array([float(c.p) for c in centers])
    v = coherent_states(prop.space, q, p).sum(axis=1)
    return v / np.linalg.norm(v)


@dataclass(frozen=True, eq=False)
class Setup:
    prop: Propagator
    channel: NoiseChannel
    psi: np.ndarray
    branch: BranchChoice | None


def build_setup(cfg: ExperimentConfig) -> Setup:
    prop = quantize(cfg.map, cfg.N)
    channel = noise_coefficients(prop.space, cfg.epsilon)
    branch = None
    if cfg.initial in ("scar", "pom", "eigenstate"):
        branch = best_branch(prop, resolve_orbit(cfg), eigendecompose(prop))
        psi = {"scar": branch.scar, "pom": branch.pom, "eigenstate": branch.eigenstate.vector}[cfg.initial]
    else:
        psi = superposition(prop, cfg.centers)
    if cfg.noise_only:
        # the map only fixes the Hilbert-space sector; each step is the channel alone
        prop = Propagator(np.eye(cfg.N, dtype=complex), prop.space, prop.descriptor)
    return Setup(prop, channel, psi, branch)


def _dump_frames(cfg: ExperimentConfig, outdir: Path, frames: list[tuple[int, PhaseSpaceGrid]], husimis) -> list[Path]:
    written = []
    lo = hi = None
    if cfg.fixed_grayscale and frames:
        lo = min(float(g.values.min()) for _, g in frames)
        hi = max(float(g.values.max()) for _, g in frames)
    for t, grid in frames:
        write_pgm(outdir / f"wigner_t{t}.pgm", grid, lo, hi)
        write_grid_csv(outdir / f"wigner_t{t}.csv", grid)
        written += [outdir / f"wigner_t{t}.pgm", outdir / f"wigner_t{t}.csv"]
    for t, grid in husimis:
        write_grid_csv(outdir / f"husimi_t{t}.csv", grid)
        written.append(outdir / f"husimi_t{t}.csv")
    return written


def run_decay_experiment(cfg: ExperimentConfig, outdir: Path | None = None) -> list[Path]:
    """Evolve the configured initial state through ``cfg.steps`` noisy map
    steps and write decay.csv plus any requested phase-space frames."""
    outdir = Path(outdir if outdir is not None else cfg.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    setup = build_setup(cfg)
    space = setup.prop.space
    rows, frames, husimis = [], [], []
    for t, rho in enumerate(evolve(np.outer(setup.psi, setup.psi.conj()), setup.prop, setup.channel, cfg.steps)):
        rows.append((str(t), purity(rho), fidelity(setup.psi, rho)))
        if cfg.wigner_dump:
            frames.append((t, smooth_wigner(rho, space)))
        if cfg.husimi_dump:
            husimis.append((t, husimi(rho, space, cfg.N)))
        log.info("t=%d purity=%.6f fidelity=%.6f", t, rows[-1][1], rows[-1][2])
    written = [write_csv(outdir / "decay.csv", "t,purity,fidelity", rows)]
    return written + _dump_frames(cfg, outdir, frames, husimis)


def husimi_similarity(a: np.ndarray, b: np.ndarray, space, resolution: int) -> float:
    """Cosine similarity of two Husimi distributions on a common grid."""
    ha = husimi_state(a, space, resolution).values.ravel()
    hb = husimi_state(b, space, resolution).values.ravel()
    return float(ha @ hb / (np.linalg.norm(ha) * np.linalg.norm(hb)))


COMPARISON_HEADER = "t,purity_eig,purity_pom,purity_scar,fidelity_eig,fidelity_pom,fidelity_scar"


def run_comparison(cfg: ExperimentConfig, outdir: Path | None = None) -> list[Path]:
    """Evolve eigenstate, POM and scar function under the same open map and
    write comparison.csv and overlap.txt."""
    if cfg.orbit is None:
        raise ValueError("comparison needs a config with an orbit")
    outdir = Path(outdir if outdir is not None else cfg.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    prop = quantize(cfg.map, cfg.N)
    channel = noise_coefficients(prop.space, cfg.epsilon)
    branch = best_branch(prop, resolve_orbit(cfg), eigendecompose(prop))
    series = [
        decay_series(psi, prop, channel, cfg.steps)
        for psi in (branch.eigenstate.vector, branch.pom, branch.scar)
    ]
    rows = [
        (str(t),) + tuple(s[t].purity for s in series) + tuple(s[t].fidelity for s in series)
        for t in range(cfg.steps + 1)
    ]
    written = [write_csv(outdir / "comparison.csv", COMPARISON_HEADER, rows)]

    ov = branch.overlap
    lines = [
        f"overlap={fmt(ov)}",
        f"overlap_squared={fmt(ov * ov)}",
        f"branch_m={branch.params.branch_m}",
        f"theta={fmt(branch.params.theta)}",
        f"T_ehrenfest={branch.params.T_ehrenfest}",
        f"eigenphase={fmt(branch.eigenstate.eigenphase)}",
        f"husimi_similarity={fmt(husimi_similarity(branch.scar, branch.eigenstate.vector, prop.space, cfg.N))}",
    ]
    path = outdir / "overlap.txt"
    path.write_text("\n".join(lines) + "\n")
    written.append(path)
    log.info("scar/eigenstate overlap %.4f (squared %.4f)", ov, ov * ov)
    return written
