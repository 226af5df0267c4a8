"""Plain-text experiment configuration: ``key=value`` lines, ``#`` comments."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .classical import PhasePoint

MAPS = ("baker", "cat")
INITIAL_STATES = ("scar", "pom", "eigenstate", "coherent", "cat_superposition")
ORBIT_STATES = ("scar", "pom", "eigenstate")
REQUIRED = ("map", "N", "epsilon", "initial")


class ConfigError(ValueError):
    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


@dataclass(frozen=True)
class ExperimentConfig:
    map: str
    N: int
    epsilon: float
    initial: str
    steps: int = 10
    orbit: str | tuple[int, int] | None = None
    centers: tuple[PhasePoint, ...] = ()
    outdir: Path = Path(".")
    wigner_dump: bool = False
    husimi_dump: bool = False
    fixed_grayscale: bool = False
    noise_only: bool = False


def _as_int(key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(key, f"expected an integer, got {raw!r}") from None


def _as_float(key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(key, f"expected a number, got {raw!r}") from None


def _as_bool(key: str, raw: str) -> bool:
    low = raw.lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(key, f"expected a boolean, got {raw!r}")


def _as_centers(key: str, raw: str) -> tuple[PhasePoint, ...]:
    # "0.35,0.35; 0.65,0.65"
    pts = []
    for chunk in raw.split(";"):
        parts = [s.strip() for s in chunk.strip().strip("()").split(",")]
        if len(parts) != 2:
            raise ConfigError(key, f"expected 'q,p' pairs separated by ';', got {chunk.strip()!r}")
        pts.append(PhasePoint(_as_float(key, parts[0]), _as_float(key, parts[1])))
    return tuple(pts)


def _as_orbit(key: str, raw: str, map_kind: str):
    if map_kind == "baker":
        if not raw or set(raw) - {"0", "1"}:
            raise ConfigError(key, f"baker orbits are binary codes such as '01', got {raw!r}")
        return raw
    parts = raw.split(",")
    if len(parts) != 2:
        raise ConfigError(key, f"cat orbits are given as 'period,index', got {raw!r}")
    period, index = (_as_int(key, s.strip()) for s in parts)
    if period < 1 or index < 0:
        raise ConfigError(key, f"need period >= 1 and index >= 0, got {raw!r}")
    return period, index


def parse_config(text: str) -> ExperimentConfig:
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", f"expected key=value, got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key in raw:
            raise ConfigError(key, "given more than once")
        raw[key] = value

    known = set(ExperimentConfig.__dataclass_fields__)
    for key in raw:
        if key not in known:
            raise ConfigError(key, "unknown key")
    for key in REQUIRED:
        if key not in raw:
            raise ConfigError(key, "missing required key")

    kind = raw["map"]
    if kind not in MAPS:
        raise ConfigError("map", f"expected one of {', '.join(MAPS)}, got {kind!r}")
    N = _as_int("N", raw["N"])
    if N < 2:
        raise ConfigError("N", f"need N >= 2, got {N}")
    if kind == "baker" and N % 2:
        raise ConfigError("N", f"the baker map needs even N, got {N}")
    eps = _as_float("epsilon", raw["epsilon"])
    if not eps > 0:
        raise ConfigError("epsilon", f"must be positive, got {eps}")
    initial = raw["initial"]
    if initial not in INITIAL_STATES:
        raise ConfigError("initial", f"expected one of {', '.join(INITIAL_STATES)}, got {initial!r}")
    steps = _as_int("steps", raw.get("steps", "10"))
    if steps < 0:
        raise ConfigError("steps", f"must be >= 0, got {steps}")

    orbit = _as_orbit("orbit", raw["orbit"], kind) if "orbit" in raw else None
    if initial in ORBIT_STATES and orbit is None:
        raise ConfigError("orbit", f"missing required key for initial={initial}")
    centers = _as_centers("centers", raw["centers"]) if "centers" in raw else ()
    if initial == "coherent" and len(centers) != 1:
        raise ConfigError("centers", f"initial=coherent needs exactly one center, got {len(centers)}")
    if initial == "cat_superposition" and len(centers) < 2:
        raise ConfigError("centers", f"initial=cat_superposition needs at least two centers, got {len(centers)}")

    return ExperimentConfig(
        map=kind,
        N=N,
        epsilon=eps,
        initial=initial,
        steps=steps,
        orbit=orbit,
        centers=centers,
        outdir=Path(raw.get("outdir", ".")),
        wigner_dump=_as_bool("wigner_dump", raw.get("wigner_dump", "false")),
        husimi_dump=_as_bool("husimi_dump", raw.get("husimi_dump", "false")),
        fixed_grayscale=_as_bool("fixed_grayscale", raw.get("fixed_grayscale", "false")),
        noise_only=_as_bool("noise_only", raw.get("noise_only", "false")),
    )


def load_config(path: Path) -> ExperimentConfig:
    return parse_config(Path(path).read_text())
