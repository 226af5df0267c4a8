"""Periodic-orbit modes and scar functions for quantum torus maps."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classical import MapDescriptor, PeriodicOrbit
from .kinematics import TorusSpace, coherent_states
from .quantum import EigenPair, Propagator, eigendecompose, select_eigenstate_by_overlap


@dataclass(frozen=True)
class ScarParams:
    theta: float
    branch_m: int
    T_ehrenfest: int


def ehrenfest_time(space: TorusSpace, map_: MapDescriptor) -> int:
    if space.N < 2:
        raise ValueError("Ehrenfest time needs N >= 2")
    # the guard keeps exact ratios such as ln 8 / ln 2 from flooring to 2
    return int(math.floor(math.log(space.N) / map_.lyapunov + 1e-12))


def aligned_orbit_states(prop: Propagator, orbit: PeriodicOrbit, images: int = 3) -> tuple[np.ndarray, float]:
    """Coherent states on the orbit points, as columns, with their free global
    phases fixed by the dynamics: <z_{j+1}|M|z_j> is real and positive for
    j = 0..L-2. Also returns the monodromy phase

        Phi = sum_j arg <z_{j+1 mod L}|M|z_j>,

    which does not depend on the phase convention of the individual states
    nor on which orbit point is labelled first.
    """
    pts = orbit.as_array()
    Z = coherent_states(prop.space, pts[:, 0], pts[:, 1], images=images)
    L = orbit.period
    steps = np.angle(np.einsum("ij,ij->j", np.roll(Z, -1, axis=1).conj(), prop.matrix @ Z))
    beta = np.concatenate([[0.0], np.cumsum(steps[:-1])])
    return Z * np.exp(1j * beta)[None, :], float(steps.sum())


def pom(prop: Propagator, orbit: PeriodicOrbit, branch_m: int = 0, images: int = 3) -> tuple[np.ndarray, ScarParams]:
    """Periodic-orbit mode sum_j exp(-i theta j) |z_j>, normalized, built on
    the dynamically aligned coherent states so that M|POM> ~ exp(i theta)|POM>.

    theta = (Phi + 2 pi m) / L with Phi the monodromy phase; the L branches
    m = 0..L-1 are the L admissible quasi-eigenphases. Relabelling the orbit
    start changes the result only by a global phase.
    """
    L = orbit.period
    if not 0 <= branch_m < L:
        raise ValueError(f"branch_m={branch_m} outside 0..{L - 1}")
    Z, phi = aligned_orbit_states(prop, orbit, images)
    theta = float(np.mod((phi + 2 * np.pi * branch_m) / L, 2 * np.pi))
    if theta >= 2 * np.pi:
        theta = 0.0
    v = Z @ np.exp(-1j * theta * np.arange(L))
    params = ScarParams(theta, branch_m, ehrenfest_time(prop.space, prop.descriptor))
    return v / np.linalg.norm(v), params


def quasi_eigenphase_defect(state: np.ndarray, params: ScarParams, prop: Propagator, L: int) -> float:
    """|<s|M^L|s> exp(-i L theta) - 1|, small when s is close to an eigenvector."""
    v = state
    for _ in range(L):
        v = prop.matrix @ v
    return float(abs(np.vdot(state, v) * np.exp(-1j * L * params.theta) - 1))


def scar_function(pom_state: np.ndarray, params: ScarParams, prop: Propagator) -> np.ndarray:
    """Cosine-windowed sum of forward and backward iterates of a POM,

        sum_{t=-T..T} cos(pi t / 2T) exp(-i theta t) M^t |POM>,

    normalized. The phase exp(-i theta t) undoes the quasi-eigenphase of the
    POM so that the iterates add up coherently.
    """
    T = params.T_ehrenfest
    if T < 0:
        raise ValueError(f"negative Ehrenfest time {T}")
    if T == 0:
        return pom_state / np.linalg.norm(pom_state)
    M = prop.matrix
    Mh = M.conj().T
    total = pom_state.astype(complex)
    fwd = bwd = pom_state
    for t in range(1, T + 1):
        fwd = M @ fwd
        bwd = Mh @ bwd
        w = math.cos(math.pi * t / (2 * T))
        total = total + w * (np.exp(-1j * params.theta * t) * fwd + np.exp(1j * params.theta * t) * bwd)
    return total / np.linalg.norm(total)


@dataclass(frozen=True, eq=False)
class BranchChoice:
    scar: np.ndarray
    pom: np.ndarray
    params: ScarParams
    eigenstate: EigenPair
    overlap: float


def best_branch(prop: Propagator, orbit: PeriodicOrbit, pairs: list[EigenPair] | None = None) -> BranchChoice:
    """Scar function over the branch m = 0..L-1 whose best eigenstate overlap
    is largest; ties go to the smaller m."""
    if pairs is None:
        pairs = eigendecompose(prop)
    best = None
    for m in range(orbit.period):
        state, params = pom(prop, orbit, m)
        scar = scar_function(state, params, prop)
        eig, ov = select_eigenstate_by_overlap(pairs, scar)
        if best is None or ov > best.overlap + 1e-14:
            best = BranchChoice(scar, state, params, eig, ov)
    return best
