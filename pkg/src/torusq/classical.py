"""Classical baker and cat maps on the unit torus, and their periodic orbits.

Orbit computations use exact rationals (fractions.Fraction); hyperbolic maps
lose a factor exp(lyapunov) of float precision per step.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

Number = Union[Fraction, float, int]

CAT_MATRIX = np.array([[2, 1], [3, 2]], dtype=np.int64)


@dataclass(frozen=True)
class PhasePoint:
    q: Number
    p: Number

    def __post_init__(self):
        object.__setattr__(self, "q", self.q % 1)
        object.__setattr__(self, "p", self.p % 1)

    def as_float(self) -> tuple[float, float]:
        return float(self.q), float(self.p)

    def __str__(self):
        return f"({self.q}, {self.p})"


@dataclass(frozen=True)
class PeriodicOrbit:
    points: tuple[PhasePoint, ...]
    source: str = ""

    @property
    def period(self) -> int:
        return len(self.points)

    def shifted(self, s: int) -> "PeriodicOrbit":
        """Same orbit, relabelled to start at points[s]."""
        s %= self.period
        return PeriodicOrbit(self.points[s:] + self.points[:s], self.source)

    def as_array(self) -> np.ndarray:
        return np.array([pt.as_float() for pt in self.points])


@dataclass(frozen=True)
class MapDescriptor:
    kind: str
    lyapunov: float


BAKER = MapDescriptor("baker", math.log(2.0))
CAT = MapDescriptor("cat", math.log(2.0 + math.sqrt(3.0)))


def descriptor(kind: str) -> MapDescriptor:
    try:
        return {"baker": BAKER, "cat": CAT}[kind]
    except KeyError:
        raise ValueError(f"unknown map kind {kind!r}; expected 'baker' or 'cat'") from None


def baker_step(x: PhasePoint) -> PhasePoint:
    s = math.floor(2 * x.q)
    return PhasePoint(2 * x.q - s, (x.p + s) / 2)


def cat_step(x: PhasePoint) -> PhasePoint:
    return PhasePoint(2 * x.q + x.p, 3 * x.q + 2 * x.p)


def iterate(step, x: PhasePoint, n: int) -> PhasePoint:
    for _ in range(n):
        x = step(x)
    return x


class PrimitivePeriodError(ValueError):
    def __init__(self, code: str, primitive: str):
        super().__init__(
            f"code {code!r} repeats the shorter code {primitive!r}; "
            f"its primitive period is {len(primitive)}"
        )
        self.primitive = primitive


def primitive_root(code: str) -> str:
    L = len(code)
    for d in range(1, L + 1):
        if L % d == 0 and code[:d] * (L // d) == code:
            return code[:d]
    return code


def baker_orbit_from_bits(code: str) -> PeriodicOrbit:
    if not code or set(code) - {"0", "1"}:
        raise ValueError(f"expected a non-empty binary string, got {code!r}")
    root = primitive_root(code)
    if root != code:
        raise PrimitivePeriodError(code, root)
    L = len(code)
    den = 2**L - 1
    x = PhasePoint(Fraction(int(code, 2), den), Fraction(int(code[::-1], 2), den))
    points = [x]
    for _ in range(L - 1):
        x = baker_step(x)
        points.append(x)
    return PeriodicOrbit(tuple(points), source=code)


def _matpow(A: np.ndarray, n: int) -> np.ndarray:
    out = np.eye(2, dtype=object)
    A = A.astype(object)
    for _ in range(n):
        out = out.dot(A)
    return out


def cat_orbits(L: int) -> list[PeriodicOrbit]:
    """All primitive period-L orbits of the cat map.

    Fixed points of A^L lie on the lattice (1/D)Z^2 with D = |det(A^L - I)|;
    they form a group generated by the columns of adj(A^L - I) taken mod D.
    """
    if not 1 <= L <= 12:
        raise ValueError(f"period L={L} outside supported range 1..12")
    B = _matpow(CAT_MATRIX, L) - np.eye(2, dtype=object)
    det = int(B[0, 0] * B[1, 1] - B[0, 1] * B[1, 0])
    D = abs(det)
    sign = 1 if det > 0 else -1
    adj = np.array([[B[1, 1], -B[0, 1]], [-B[1, 0], B[0, 0]]], dtype=object) * sign
    g1 = np.array([int(adj[0, 0]) % D, int(adj[1, 0]) % D], dtype=np.int64)
    g2 = np.array([int(adj[0, 1]) % D, int(adj[1, 1]) % D], dtype=np.int64)

    o1 = D // math.gcd(D, math.gcd(int(g1[0]), int(g1[1])))
    sub = (np.arange(o1, dtype=np.int64)[:, None] * g1[None, :]) % D
    sub_set = set((sub[:, 0] * D + sub[:, 1]).tolist())
    k = 1
    while k < D:
        v = (k * g2) % D
        if int(v[0] * D + v[1]) in sub_set:
            break
        k += 1
    pts = (sub[None, :, :] + np.arange(k, dtype=np.int64)[:, None, None] * g2[None, None, :]) % D
    pts = pts.reshape(-1, 2)
    assert len(pts) == D, (len(pts), D)

    A = CAT_MATRIX

    def step(v):
        return (v @ A.T) % D

    def power(v, n):
        for _ in range(n):
            v = step(v)
        return v

    primitive = np.ones(len(pts), dtype=bool)
    for d in range(1, L):
        if L % d == 0:
            primitive &= np.any(power(pts, d) != pts, axis=1)
    pts = pts[primitive]

    # canonical representative: lexicographically smallest point on the orbit
    cur = pts
    best = pts[:, 0] * D + pts[:, 1]
    for _ in range(1, L):
        cur = step(cur)
        best = np.minimum(best, cur[:, 0] * D + cur[:, 1])
    reps = np.unique(best)
    orbits = []
    for i, r in enumerate(reps.tolist()):
        v = np.array([r // D, r % D], dtype=np.int64)
        points = []
        for _ in range(L):
            points.append(PhasePoint(Fraction(int(v[0]), D), Fraction(int(v[1]), D)))
            v = step(v)
        orbits.append(PeriodicOrbit(tuple(points), source=f"L={L}, index={i}"))
    return orbits


def cat_orbit(L: int, index: int) -> PeriodicOrbit:
    orbits = cat_orbits(L)
    if not 0 <= index < len(orbits):
        raise IndexError(f"cat period-{L} orbit index {index} out of range 0..{len(orbits) - 1}")
    return orbits[index]


def baker_orbits(L: int) -> list[PeriodicOrbit]:
    """All primitive period-L baker orbits, one per cyclic class of binary
    codes, labelled by the lexicographically smallest rotation."""
    if not 1 <= L <= 20:
        raise ValueError(f"period L={L} outside supported range 1..20")
    codes = []
    for n in range(2**L):
        code = format(n, f"0{L}b")
        if primitive_root(code) == code and code == min(code[i:] + code[:i] for i in range(L)):
            codes.append(code)
    return [baker_orbit_from_bits(c) for c in codes]
