"""Ground-user distributions: hotspot-mixture generation and scenario files."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

__all__ = [
    "GroundUser",
    "ScenarioSpec",
    "ScenarioFormatError",
    "generate",
    "save_scenario",
    "load_scenario",
]

SCENARIO_FORMAT_VERSION = 1

# draws per point before declaring the spec unsatisfiable
_MAX_REJECTION_DRAWS = 10_000

# sigma draw warp: most hotspots land near the tight end, a few come out broad
_SIGMA_SHAPE = 4.0
# crowding: broader hotspots attract disproportionately many users
_CROWDING_EXPONENT = 1.5


class ScenarioFormatError(ValueError):
    """Scenario file is missing, malformed, or inconsistent."""


@dataclass
class GroundUser:
    """A ground user: 2D position and, once deployed, the serving UAV index."""

    x: float
    y: float
    label: int | None = None


@dataclass(frozen=True)
class ScenarioSpec:
    """Mixture of uniform background users and Gaussian hotspots."""

    width_m: float = 600.0
    height_m: float = 600.0
    n_users: int = 600
    hotspot_count_range: tuple[int, int] = (24, 32)
    hotspot_sigma_range_m: tuple[float, float] = (3.0, 9.0)
    background_fraction: float = 0.2
    seed: int = 0

    def __post_init__(self) -> None:
        if self.width_m <= 0 or self.height_m <= 0:
            raise ValueError("area dimensions must be positive")
        if self.n_users < 1:
            raise ValueError("need at least one ground user")
        lo, hi = self.hotspot_count_range
        if lo < 1 or hi < lo:
            raise ValueError("hotspot count range must be a non-empty positive range")
        slo, shi = self.hotspot_sigma_range_m
        if slo <= 0 or shi < slo:
            raise ValueError("hotspot sigma range must be a non-empty positive range")
        if not (0.0 <= self.background_fraction <= 1.0):
            raise ValueError("background fraction must lie in [0, 1]")


def generate(spec: ScenarioSpec) -> list[GroundUser]:
    """Draw the ground users of one scenario; deterministic per spec.seed.

    Hotspot count, centers, and per-hotspot sigmas are drawn first, then the
    background users (uniform) and hotspot users (isotropic Gaussian around
    their hotspot, redrawn while out of bounds). Sigmas are log-interpolated
    across the configured range with a warp that favors the tight end, and
    users pick their hotspot with weight sigma**_CROWDING_EXPONENT, so a
    typical scenario holds many tight clusters plus a crowded plaza or two.
    """
    rng = np.random.default_rng(spec.seed)
    lo, hi = spec.hotspot_count_range
    n_hotspots = int(rng.integers(lo, hi + 1))
    centers = rng.uniform((0.0, 0.0), (spec.width_m, spec.height_m), size=(n_hotspots, 2))
    slo, shi = spec.hotspot_sigma_range_m
    warp = rng.uniform(0.0, 1.0, size=n_hotspots) ** _SIGMA_SHAPE
    sigmas = slo * (shi / slo) ** warp

    n_background = round(spec.background_fraction * spec.n_users)
    n_hot = spec.n_users - n_background
    weights = sigmas**_CROWDING_EXPONENT
    hotspot_of = rng.choice(n_hotspots, size=n_hot, p=weights / weights.sum())

    users: list[GroundUser] = []
    for h in hotspot_of:
        cx, cy = centers[h]
        sigma = sigmas[h]
        for _ in range(_MAX_REJECTION_DRAWS):
            x, y = rng.normal((cx, cy), sigma)
            if 0.0 <= x <= spec.width_m and 0.0 <= y <= spec.height_m:
                users.append(GroundUser(float(x), float(y)))
                break
        else:
            raise RuntimeError("hotspot sampling failed to land in bounds")
    if n_background:
        bg = rng.uniform((0.0, 0.0), (spec.width_m, spec.height_m), size=(n_background, 2))
        users.extend(GroundUser(float(x), float(y)) for x, y in bg)
    return users


def save_scenario(path: str | Path, spec: ScenarioSpec, users: list[GroundUser]) -> None:
    """Write a scenario file; positions are stored as full-precision floats."""
    doc = {
        "format_version": SCENARIO_FORMAT_VERSION,
        "spec": _spec_to_dict(spec),
        "points": [[u.x, u.y] for u in users],
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def load_scenario(path: str | Path) -> tuple[ScenarioSpec, list[GroundUser]]:
    """Read a scenario file back; raises ScenarioFormatError on any defect."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ScenarioFormatError(f"cannot read scenario file {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioFormatError(
            f"malformed scenario file {path}: {exc.msg} at line {exc.lineno} column {exc.colno}"
        ) from exc
    if not isinstance(doc, dict):
        raise ScenarioFormatError(f"scenario file {path} must hold a JSON object")
    version = doc.get("format_version")
    if version != SCENARIO_FORMAT_VERSION:
        raise ScenarioFormatError(f"unsupported scenario format version {version!r}")
    try:
        spec = _spec_from_dict(doc["spec"])
    except KeyError as exc:
        raise ScenarioFormatError(f"scenario file {path} is missing key {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise ScenarioFormatError(f"invalid scenario spec in {path}: {exc}") from exc
    points = doc.get("points")
    if not isinstance(points, list) or not points:
        raise ScenarioFormatError(f"scenario file {path} holds no points")
    if len(points) != spec.n_users:
        raise ScenarioFormatError(
            f"scenario file {path} holds {len(points)} points, spec says {spec.n_users}"
        )
    users = []
    for entry in points:
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(v, (int, float)) and math.isfinite(v) for v in entry)
        ):
            raise ScenarioFormatError(f"invalid point entry {entry!r} in {path}")
        x, y = float(entry[0]), float(entry[1])
        if not (0.0 <= x <= spec.width_m and 0.0 <= y <= spec.height_m):
            raise ScenarioFormatError(f"point ({x}, {y}) lies outside the area in {path}")
        users.append(GroundUser(x, y))
    return spec, users


def _spec_to_dict(spec: ScenarioSpec) -> dict:
    d = asdict(spec)
    d["hotspot_count_range"] = list(spec.hotspot_count_range)
    d["hotspot_sigma_range_m"] = list(spec.hotspot_sigma_range_m)
    return d


def _spec_from_dict(d: dict) -> ScenarioSpec:
    return ScenarioSpec(
        width_m=float(d["width_m"]),
        height_m=float(d["height_m"]),
        n_users=int(d["n_users"]),
        hotspot_count_range=(int(d["hotspot_count_range"][0]), int(d["hotspot_count_range"][1])),
        hotspot_sigma_range_m=(
            float(d["hotspot_sigma_range_m"][0]),
            float(d["hotspot_sigma_range_m"][1]),
        ),
        background_fraction=float(d["background_fraction"]),
        seed=int(d["seed"]),
    )
