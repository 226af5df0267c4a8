"""
Finite Hilbert space on the 2-torus.

Position basis |q_j>, j = 0..N-1, with q_j = (j + chi_q)/N and
p_k = (k + chi_p)/N. All operators are dense N x N complex arrays in the
position basis; states are length-N complex vectors.

Shift operators:
    V|q_j> = exp[-2 pi i (j + chi_q)/N] |q_j>    (diagonal, V|p_k> = |p_{k-1}>)
    U|q_j> = |q_{j+1}>,  U^N = exp(-2 pi i chi_p)  (U|p_k> = exp[-2 pi i p_k] |p_k>)

With this orientation U^j V^k = V^k U^j exp(2 pi i jk/N), and the symmetric
translation T_{j,k} = N^{-1/2} exp(i pi jk/N) V^j U^k satisfies
T_{j,k}^dagger = T_{-j,-k}. T_{j,k} moves a state by k/N in position and by
-j/N in momentum.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

UNITARY_TOL = 1e-12


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class TorusSpace:
    N: int
    chi_q: float = 0.0
    chi_p: float = 0.0
    hbar: float = field(init=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.N, (int, np.integer)) or self.N < 1:
            raise DimensionError(f"invalid dimension N={self.N!r}; need a positive integer")
        for name in ("chi_q", "chi_p"):
            chi = getattr(self, name)
            if not 0.0 <= chi < 1.0:
                raise ValueError(f"{name}={chi} outside [0, 1)")
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "hbar", 1.0 / (2.0 * np.pi * self.N))

    @property
    def q(self) -> np.ndarray:
        return (np.arange(self.N) + self.chi_q) / self.N

    @property
    def p(self) -> np.ndarray:
        return (np.arange(self.N) + self.chi_p) / self.N


def build_space(N: int, chi_q: float = 0.0, chi_p: float = 0.0) -> TorusSpace:
    return TorusSpace(N, chi_q, chi_p)


def fourier_matrix(space: TorusSpace) -> np.ndarray:
    """Return F with F[k, j] = <p_k|q_j>."""
    N = space.N
    n = np.arange(N)
    return np.exp(-2j * np.pi * np.outer(n + space.chi_p, n + space.chi_q) / N) / np.sqrt(N)


def _wrap_phase(space: TorusSpace, t):
    # |q_{j+N}> = exp(-2 pi i chi_p) |q_j>
    return np.exp(-2j * np.pi * space.chi_p * np.floor_divide(t, space.N))


def shift_u(space: TorusSpace, k: int = 1) -> np.ndarray:
    """Position shift U^k (any integer k)."""
    N = space.N
    m = np.arange(N)
    t = m + k
    out = np.zeros((N, N), dtype=complex)
    out[t % N, m] = _wrap_phase(space, t)
    return out


def shift_v(space: TorusSpace, j: int = 1) -> np.ndarray:
    """V^j, diagonal in the position basis. V|p_k> = |p_{k-1}>, which is the
    orientation that gives U^j V^k = V^k U^j exp(2 pi i jk / N)."""
    return np.diag(np.exp(-2j * np.pi * j * (np.arange(space.N) + space.chi_q) / space.N))


def translation(space: TorusSpace, j: int, k: int, unitary: bool = False) -> np.ndarray:
    """Translation by j momentum steps and k position steps.

    The default carries the N^{-1/2} factor that makes {T_{j,k}} orthonormal
    under Tr(A^dagger B). With ``unitary=True`` the factor is dropped and the
    result is unitary; the noise channel uses that form.
    """
    N = space.N
    m = np.arange(N)
    t = m + k
    out = np.zeros((N, N), dtype=complex)
    rows = t % N
    out[rows, m] = (
        np.exp(1j * np.pi * j * k / N)
        * np.exp(-2j * np.pi * j * (rows + space.chi_q) / N)
        * _wrap_phase(space, t)
    )
    if not unitary:
        out /= np.sqrt(N)
    return out


def parity(space: TorusSpace) -> np.ndarray:
    """Reflection q -> -q. Needs 2*chi_q integer (chi_q in {0, 1/2})."""
    N = space.N
    shift = 2.0 * space.chi_q
    if abs(shift - round(shift)) > 1e-12:
        raise ValueError(f"parity undefined for chi_q={space.chi_q}")
    j = np.arange(N)
    out = np.zeros((N, N))
    out[(-j - int(round(shift))) % N, j] = 1.0
    return out


def coherent_state(space: TorusSpace, q0: float, p0: float, images: int = 3) -> np.ndarray:
    """Circular Gaussian wave packet centred at (q0, p0), periodized over
    |m| <= images copies and normalized."""
    N = space.N
    m = np.arange(-images, images + 1)[:, None]
    x = space.q[None, :] - q0 + m
    amps = np.exp(-np.pi * N * x**2 + 2j * np.pi * N * p0 * x - 2j * np.pi * space.chi_p * m).sum(axis=0)
    return amps / np.linalg.norm(amps)


def coherent_states(space: TorusSpace, q0, p0, images: int = 3) -> np.ndarray:
    """Batch version of coherent_state: returns an (N, K) array whose columns
    are the normalized states for the K centres (q0[i], p0[i])."""
    N = space.N
    q0 = np.asarray(q0, dtype=float).ravel()
    p0 = np.asarray(p0, dtype=float).ravel()
    m = np.arange(-images, images + 1)
    # axes: image, basis index, centre
    x = space.q[None, :, None] - q0[None, None, :] + m[:, None, None]
    phase = 2j * np.pi * (N * p0[None, None, :] * x - space.chi_p * m[:, None, None])
    amps = np.exp(-np.pi * N * x**2 + phase).sum(axis=0)
    return amps / np.linalg.norm(amps, axis=0, keepdims=True)


def chord_transform(rho: np.ndarray, space: TorusSpace) -> np.ndarray:
    """Chord coefficients C[a, b] = Tr(T_{a,b}^dagger rho), in O(N^2 log N).

    Only the wrapped diagonal n = m + b of T_{a,b} is non-zero, so each column
    b reduces to one FFT over m.
    """
    N = space.N
    m = np.arange(N)[:, None]
    b = np.arange(N)[None, :]
    t = m + b
    diags = np.conj(_wrap_phase(space, t)) * rho[t % N, m]
    a = np.arange(N)[:, None]
    pre = np.exp(1j * np.pi * a * b / N + 2j * np.pi * a * space.chi_q / N) * np.sqrt(N)
    return pre * np.fft.ifft(diags, axis=0)


def inverse_chord_transform(chord: np.ndarray, space: TorusSpace) -> np.ndarray:
    """Rebuild rho = sum_{a,b} C[a, b] T_{a,b}."""
    N = space.N
    a = np.arange(N)[:, None]
    b = np.arange(N)[None, :]
    weighted = chord * np.exp(-1j * np.pi * a * b / N - 2j * np.pi * a * space.chi_q / N)
    diags = np.fft.fft(weighted, axis=0) / np.sqrt(N)  # indexed [m, b]
    m = a
    t = m + b
    rho = np.empty((N, N), dtype=complex)
    rho[t % N, m] = _wrap_phase(space, t) * diags
    return rho
