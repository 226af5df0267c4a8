"""Diffusive translation noise, the open-map step, purity and fidelity.

The channel is

    D(rho) = sum_{j,k} c(j,k) Tu_{j,k} rho Tu_{j,k}^dagger

with Tu = sqrt(N) T the *unitary* translations, so that sum K^dagger K = I for
K_{j,k} = sqrt(c(j,k)) Tu_{j,k}. Conjugation by a translation only multiplies
each chord coefficient by a phase, so in the chord basis the channel is a
pointwise product with the multiplier grid c~(a,b).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .kinematics import TorusSpace, chord_transform, inverse_chord_transform, translation
from .quantum import Propagator

HERMITIZE_EVERY = 10
POSITIVITY_TOL = 1e-8


class PositivityError(ArithmeticError):
    pass


@dataclass(frozen=True, eq=False)
class NoiseChannel:
    space: TorusSpace
    epsilon: float
    coefficients: np.ndarray
    chord_multipliers: np.ndarray


@dataclass(frozen=True)
class DecayRecord:
    time: int
    purity: float
    fidelity: float


def _periodized_gaussian(N: int, sigma: float) -> np.ndarray:
    j = np.arange(N, dtype=float)
    g = np.exp(-(j**2) / (2 * sigma**2))
    mu = 1
    while True:
        added = np.exp(-((j - mu * N) ** 2) / (2 * sigma**2)) + np.exp(-((j + mu * N) ** 2) / (2 * sigma**2))
        g = g + added
        if added.max() <= 1e-16 * g.max():
            return g
        mu += 1


def noise_coefficients(space: TorusSpace, epsilon: float) -> NoiseChannel:
    """Periodized Gaussian translation weights of phase-space radius ~epsilon."""
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    N = space.N
    sigma = epsilon * N / (2 * np.pi)
    g = _periodized_gaussian(N, sigma)
    c = np.outer(g, g)
    c /= c.sum()
    # multiplier[a, b] = sum_{j,k} c[j,k] exp[2 pi i (j b - k a)/N]
    F = np.fft.fft2(c)
    a = np.arange(N)[:, None]
    b = np.arange(N)[None, :]
    mult = F[(-b) % N, a]
    if np.abs(mult.imag).max() > 1e-12:
        raise ArithmeticError("chord multipliers are not real; coefficient grid lost its symmetry")
    return NoiseChannel(space, float(epsilon), c, mult.real.copy())


def _check_space(rho: np.ndarray, space: TorusSpace):
    if rho.shape != (space.N, space.N):
        raise ValueError(f"density matrix shape {rho.shape} does not match N={space.N}")


def kraus_operators(ch: NoiseChannel) -> Iterator[np.ndarray]:
    N = ch.space.N
    for j in range(N):
        for k in range(N):
            if ch.coefficients[j, k] > 0:
                yield np.sqrt(ch.coefficients[j, k]) * translation(ch.space, j, k, unitary=True)


def apply_noise_naive(rho: np.ndarray, ch: NoiseChannel) -> np.ndarray:
    """Explicit Kraus sum; O(N^5). Reference path for small N."""
    _check_space(rho, ch.space)
    out = np.zeros_like(rho, dtype=complex)
    for K in kraus_operators(ch):
        out += K @ rho @ K.conj().T
    return out


def apply_noise_fast(rho: np.ndarray, ch: NoiseChannel) -> np.ndarray:
    """Same channel through the chord basis; O(N^2 log N)."""
    _check_space(rho, ch.space)
    chord = chord_transform(rho, ch.space)
    return inverse_chord_transform(chord * ch.chord_multipliers, ch.space)


apply_noise = apply_noise_fast


def choi_matrix(ch: NoiseChannel) -> np.ndarray:
    """Choi matrix sum_{ij} |i><j| (x) D(|i><j|), built with the fast path."""
    N = ch.space.N
    choi = np.zeros((N * N, N * N), dtype=complex)
    for i in range(N):
        for j in range(N):
            E = np.zeros((N, N), dtype=complex)
            E[i, j] = 1.0
            choi[i * N:(i + 1) * N, j * N:(j + 1) * N] = apply_noise_fast(E, ch)
    return choi


def open_step(rho: np.ndarray, prop: Propagator, ch: NoiseChannel) -> np.ndarray:
    _check_space(rho, prop.space)
    if prop.space != ch.space:
        raise ValueError("propagator and channel live on different spaces")
    M = prop.matrix
    return apply_noise_fast(M @ rho @ M.conj().T, ch)


def hermitize(rho: np.ndarray) -> np.ndarray:
    return 0.5 * (rho + rho.conj().T)


def check_positivity(rho: np.ndarray, tol: float = POSITIVITY_TOL) -> float:
    lam_min = float(np.linalg.eigvalsh(hermitize(rho)).min())
    if lam_min < -tol:
        raise PositivityError(f"density matrix lost positivity: smallest eigenvalue {lam_min:.3e}")
    return lam_min


def evolve(rho0: np.ndarray, prop: Propagator, ch: NoiseChannel | None, steps: int) -> Iterator[np.ndarray]:
    """Yield rho_0, rho_1, ..., rho_steps. ``ch=None`` gives closed evolution.

    Every HERMITIZE_EVERY steps the state is re-Hermitized and its spectrum
    checked; negative eigenvalues are reported, never clipped.
    """
    rho = np.array(rho0, dtype=complex)
    yield rho
    M = prop.matrix
    for t in range(1, steps + 1):
        rho = M @ rho @ M.conj().T
        if ch is not None:
            rho = apply_noise_fast(rho, ch)
        if t % HERMITIZE_EVERY == 0:
            rho = hermitize(rho)
            check_positivity(rho)
        yield rho


def purity(rho: np.ndarray) -> float:
    # Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return float(np.vdot(rho.conj().T, rho).real)


def fidelity(psi: np.ndarray, rho: np.ndarray) -> float:
    val = float(np.vdot(psi, rho @ psi).real)
    if val < -1e-10:
        raise PositivityError(f"<psi|rho|psi> = {val:.3e} is negative")
    return float(np.sqrt(max(val, 0.0)))


def projector(psi: np.ndarray) -> np.ndarray:
    return np.outer(psi, psi.conj())


def decay_series(psi: np.ndarray, prop: Propagator, ch: NoiseChannel | None, steps: int) -> list[DecayRecord]:
    return [
        DecayRecord(t, purity(rho), fidelity(psi, rho))
        for t, rho in enumerate(evolve(projector(psi), prop, ch, steps))
    ]
