"""Discrete Wigner and Husimi distributions on the torus, plus grid export."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from .kinematics import TorusSpace, chord_transform, coherent_states


@dataclass(frozen=True, eq=False)
class PhaseSpaceGrid:
    """Real values on the unit square; axis 0 is q, axis 1 is p, and grid
    point (i, k) sits at (i / rows, k / cols)."""

    values: np.ndarray
    kind: str

    @property
    def resolution(self) -> tuple[int, int]:
        return self.values.shape

    def coordinates(self) -> tuple[np.ndarray, np.ndarray]:
        """Phase-space coordinates of each row (q) and column (p)."""
        rows, cols = self.values.shape
        return np.arange(rows) / rows, np.arange(cols) / cols

    def index_of(self, q: float, p: float) -> tuple[int, int]:
        """Grid point nearest to (q, p) on the torus."""
        rows, cols = self.values.shape
        return int(np.floor(q * rows + 0.5)) % rows, int(np.floor(p * cols + 0.5)) % cols


def _wigner_raw(rho: np.ndarray, space: TorusSpace) -> np.ndarray:
    # Tr(rho U^a R V^b) for a, b in 0..2N-1: one FFT over m per a.
    N = space.N
    s = int(round(2 * space.chi_q))
    m = np.arange(N)
    r = (-m - s) % N
    a = np.arange(2 * N)[:, None]
    t = r[None, :] + a
    wrap = np.exp(-2j * np.pi * space.chi_p * (t // N))
    f = wrap * rho[m[None, :], t % N]
    G = np.fft.fft(f, axis=1)  # [a, b mod N]
    b = np.arange(2 * N)[None, :]
    phase = np.exp(1j * np.pi * a * b / N - 2j * np.pi * b * space.chi_q / N)
    return phase * G[:, b[0] % N] / (2 * N)


@lru_cache(maxsize=32)
def _wigner_norm(space: TorusSpace) -> float:
    # sum over the grid of the point operators is a multiple of the identity
    total = _wigner_raw(np.eye(space.N, dtype=complex), space).sum() / space.N
    return float(total.real)


def wigner_complex(rho: np.ndarray, space: TorusSpace) -> np.ndarray:
    """Unrounded W(a, b) = Tr(rho A(a, b)) on the 2N x 2N half-integer grid,
    including the imaginary residue (zero for Hermitian rho)."""
    parity_shift = 2 * space.chi_q
    if abs(parity_shift - round(parity_shift)) > 1e-12:
        raise ValueError(f"Wigner grid needs chi_q in {{0, 1/2}}, got {space.chi_q}")
    return _wigner_raw(np.asarray(rho, dtype=complex), space) / _wigner_norm(space)


def wigner(rho: np.ndarray, space: TorusSpace) -> PhaseSpaceGrid:
    """Discrete Wigner function from the parity point operators
    A(a, b) = (1/2N) U^a R V^b exp(i pi ab/N), the reflections through
    (a/2N, b/2N), scaled so sum W = Tr rho.

    For every pair of operators sum W_rho W_sigma = Tr(rho sigma)/N.
    """
    return PhaseSpaceGrid(wigner_complex(rho, space).real, "wigner")


def _translation_phase(space: TorusSpace, j, k):
    # entry of T_{j,k} in column 0, up to the common 1/sqrt(N)
    N = space.N
    return (
        np.exp(1j * np.pi * j * k / N)
        * np.exp(-2j * np.pi * j * (np.mod(k, N) + space.chi_q) / N)
        * np.exp(-2j * np.pi * space.chi_p * np.floor_divide(k, N))
    )


def _centred_chords(N: int) -> tuple[np.ndarray, np.ndarray]:
    """Integer chord representatives closest to zero and their weights; for
    even N the two Nyquist representatives +-N/2 share the weight."""
    if N % 2:
        reps = np.arange(-(N // 2), N // 2 + 1)
        return reps, np.ones(N)
    reps = np.arange(-(N // 2), N // 2 + 1)
    w = np.ones(N + 1)
    w[0] = w[-1] = 0.5
    return reps, w


def smooth_wigner(rho: np.ndarray, space: TorusSpace) -> PhaseSpaceGrid:
    """Ghost-free Wigner function on the same 2N x 2N grid.

    Each translation T_{j,k} contributes to the point-operator Wigner function
    a plane wave exp[-2 pi i (j q + k p)] / (N sqrt N) on one parity sublattice
    only; which sublattice depends on the integer representative of (j, k),
    and that aliasing is what produces the three sign-alternating ghost images.
    Here every chord uses its representative closest to the origin and its
    plane wave fills the whole grid, which leaves a smooth function with
    sum W = Tr rho.
    """
    N = space.N
    chord = chord_transform(np.asarray(rho, dtype=complex), space)
    reps, w = _centred_chords(N)
    J, K = np.meshgrid(reps, reps, indexing="ij")
    Jm, Km = np.mod(J, N), np.mod(K, N)
    # chord coefficients transform with the conjugate of the operator phase
    coeff = chord[Jm, Km] * np.conj(_translation_phase(space, J, K) / _translation_phase(space, Jm, Km))
    coeff *= np.outer(w, w) / (4 * N * np.sqrt(N))
    F = np.zeros((2 * N, 2 * N), dtype=complex)
    np.add.at(F, (np.mod(-J, 2 * N), np.mod(-K, 2 * N)), coeff)
    W = (2 * N) ** 2 * np.fft.ifft2(F)
    return PhaseSpaceGrid(W.real, "wigner")


def negativity(grid: PhaseSpaceGrid) -> float:
    """Total negative mass, sum of max(0, -W) over the grid."""
    if grid.kind != "wigner":
        raise ValueError(f"negativity needs a wigner grid, got {grid.kind!r}")
    return float(np.clip(-grid.values, 0.0, None).sum())


@lru_cache(maxsize=8)
def _grid_states(space: TorusSpace, resolution: int) -> np.ndarray:
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    c = np.arange(resolution) / resolution
    Q, P = np.meshgrid(c, c, indexing="ij")
    Z = coherent_states(space, Q.ravel(), P.ravel())
    Z.flags.writeable = False
    return Z


def husimi(rho: np.ndarray, space: TorusSpace, resolution: int) -> PhaseSpaceGrid:
    """H(q, p) = <z(q,p)|rho|z(q,p)> on the points (i, k) / resolution."""
    Z = _grid_states(space, resolution)
    vals = np.einsum("ik,ij,jk->k", Z.conj(), rho, Z, optimize=True).real
    return PhaseSpaceGrid(vals.reshape(resolution, resolution), "husimi")


def husimi_state(psi: np.ndarray, space: TorusSpace, resolution: int) -> PhaseSpaceGrid:
    """Husimi of a pure state, |<z|psi>|^2, without forming the projector."""
    Z = _grid_states(space, resolution)
    return PhaseSpaceGrid((np.abs(Z.conj().T @ psi) ** 2).reshape(resolution, resolution), "husimi")


def local_maxima(grid: PhaseSpaceGrid, count: int) -> list[tuple[int, int]]:
    """Indices of the ``count`` largest periodic local maxima, largest first."""
    v = grid.values
    is_max = np.ones_like(v, dtype=bool)
    for dq in (-1, 0, 1):
        for dp in (-1, 0, 1):
            if dq or dp:
                is_max &= v >= np.roll(np.roll(v, dq, axis=0), dp, axis=1)
    idx = np.argwhere(is_max)
    order = np.argsort(-v[is_max], kind="stable")
    return [tuple(int(i) for i in idx[o]) for o in order[:count]]


def to_gray(values: np.ndarray, lo: float | None = None, hi: float | None = None) -> np.ndarray:
    """8-bit gray levels with lo -> white (255) and hi -> black (0)."""
    lo = float(values.min()) if lo is None else lo
    hi = float(values.max()) if hi is None else hi
    if hi <= lo:
        return np.full(values.shape, 255, dtype=np.uint8)
    scaled = (np.clip(values, lo, hi) - lo) / (hi - lo)
    return np.round(255 * (1 - scaled)).astype(np.uint8)


def write_pgm(path: Path, grid: PhaseSpaceGrid, lo: float | None = None, hi: float | None = None):
    """Plain (P2) PGM. Image rows run from p = 1 at the top to p = 0, columns
    along q, so the picture has the usual phase-space orientation."""
    gray = to_gray(grid.values, lo, hi).T[::-1]
    rows, cols = gray.shape
    lines = ["P2", f"{cols} {rows}", "255"]
    lines += [" ".join(str(int(x)) for x in row) for row in gray]
    Path(path).write_text("\n".join(lines) + "\n")


def read_pgm(path: Path) -> np.ndarray:
    tokens = [t for line in Path(path).read_text().splitlines() if not line.startswith("#") for t in line.split()]
    if tokens[0] != "P2":
        raise ValueError(f"{path}: not a plain PGM file")
    cols, rows, _maxval = map(int, tokens[1:4])
    return np.array(tokens[4:4 + rows * cols], dtype=int).reshape(rows, cols)


def write_grid_csv(path: Path, grid: PhaseSpaceGrid):
    """Row-major CSV, one grid row (fixed q) per line, 17 significant digits."""
    with open(path, "w", newline="\n") as fh:
        for row in grid.values:
            fh.write(",".join(f"{x:.17g}" for x in row) + "\n")
