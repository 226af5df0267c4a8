"""Quantized baker and cat propagators and their spectra."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .classical import BAKER, CAT, MapDescriptor
from .kinematics import UNITARY_TOL, TorusSpace, build_space, fourier_matrix


class ConstructionError(RuntimeError):
    pass


class ConventionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Propagator:
    matrix: np.ndarray
    space: TorusSpace
    descriptor: MapDescriptor

    def __post_init__(self):
        res = unitarity_residual(self.matrix)
        if res >= UNITARY_TOL:
            raise ConstructionError(f"{self.descriptor.kind} propagator not unitary: residual {res:.3e}")

    @property
    def N(self) -> int:
        return self.space.N

    def power(self, t: int) -> np.ndarray:
        """M^t, using M^dagger for negative t."""
        base = self.matrix if t >= 0 else self.matrix.conj().T
        return np.linalg.matrix_power(base, abs(t))


@dataclass(frozen=True, eq=False)
class EigenPair:
    eigenphase: float
    vector: np.ndarray


def unitarity_residual(M: np.ndarray) -> float:
    return float(np.abs(M.conj().T @ M - np.eye(M.shape[0])).max())


def quantize_baker(space: TorusSpace) -> Propagator:
    N = space.N
    if N % 2:
        raise ValueError(f"baker map needs even N, got N={N}")
    if space.chi_q != 0.5 or space.chi_p != 0.5:
        raise ConventionError(
            f"baker map is quantized with chi_q = chi_p = 1/2, got ({space.chi_q}, {space.chi_p})"
        )
    half = fourier_matrix(build_space(N // 2, 0.5, 0.5))
    block = scipy.linalg.block_diag(half, half)
    M = fourier_matrix(space).conj().T @ block
    return Propagator(M, space, BAKER)


def quantize_cat(space: TorusSpace) -> Propagator:
    N = space.N
    if space.chi_q != 0.0 or space.chi_p != 0.0:
        raise ConventionError(f"cat map is quantized with zero Floquet angles, got ({space.chi_q}, {space.chi_p})")
    j = np.arange(N)
    # reduce the integer phase mod N before scaling to keep it exact
    phase = (j[:, None] ** 2 - np.outer(j, j) + j[None, :] ** 2) % N
    M = np.exp(2j * np.pi * phase / N) / np.sqrt(N)
    return Propagator(M, space, CAT)


def quantize(kind: str, N: int) -> Propagator:
    if kind == "baker":
        return quantize_baker(build_space(N, 0.5, 0.5))
    if kind == "cat":
        return quantize_cat(build_space(N, 0.0, 0.0))
    raise ValueError(f"unknown map kind {kind!r}")


def eigensystem(prop: Propagator, tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """Eigenphases in [0, 2pi), ascending, and the matching orthonormal
    eigenvectors as columns.

    Uses the complex Schur form: for a normal matrix it is diagonal and the
    Schur vectors are an orthonormal eigenbasis, degenerate clusters included.
    """
    M = prop.matrix
    T, Z = scipy.linalg.schur(M, output="complex")
    lam = np.diag(T)
    phases = np.mod(np.angle(lam), 2 * np.pi)
    # mod of a tiny negative angle rounds up to exactly 2 pi
    phases[phases >= 2 * np.pi] = 0.0
    order = np.argsort(phases, kind="stable")
    phases, Z = phases[order], Z[:, order]
    resid = np.linalg.norm(M @ Z - Z * np.exp(1j * phases)[None, :], axis=0).max()
    if resid >= tol:
        raise ConstructionError(f"eigendecomposition residual {resid:.3e} exceeds {tol:.0e}")
    return phases, Z


def eigendecompose(prop: Propagator) -> list[EigenPair]:
    phases, Z = eigensystem(prop)
    return [EigenPair(float(th), Z[:, i]) for i, th in enumerate(phases)]


def _clusters(phases: np.ndarray, tol: float) -> list[list[int]]:
    groups = [[0]]
    for i in range(1, len(phases)):
        if phases[i] - phases[i - 1] < tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    # eigenphases near 0 and near 2pi are neighbours
    if len(groups) > 1 and phases[0] + 2 * np.pi - phases[-1] < tol:
        groups[0] = groups.pop() + groups[0]
    return groups


def select_eigenstate_by_overlap(
    pairs: list[EigenPair], target: np.ndarray, cluster_tol: float = 1e-9
) -> tuple[EigenPair, float]:
    """Eigenstate closest to ``target``, with the overlap |<target|v>|.

    Eigenphases closer than ``cluster_tol`` form one eigenspace; the overlap
    with a cluster is the norm of the projection of the target onto its span,
    and the returned vector is that normalized projection.
    """
    if not pairs:
        raise ValueError("no eigenpairs to select from")
    phases = np.array([pr.eigenphase for pr in pairs])
    order = np.argsort(phases, kind="stable")
    phases = phases[order]
    vecs = np.column_stack([pairs[i].vector for i in order])
    best, best_ov = None, -1.0
    for group in _clusters(phases, cluster_tol):
        if len(group) == 1:
            v = vecs[:, group[0]]
            ov = abs(np.vdot(target, v))
            cand = pairs[order[group[0]]]
        else:
            Q, _ = np.linalg.qr(vecs[:, group])
            proj = Q @ (Q.conj().T @ target)
            ov = float(np.linalg.norm(proj))
            v = proj / ov if ov > 0 else Q[:, 0]
            cand = EigenPair(float(phases[group[0]]), v)
        # strict > keeps the smaller eigenphase on ties, since clusters come in ascending order
        if ov > best_ov + 1e-14:
            best, best_ov = cand, float(ov)
    return best, best_ov
