"""Interference-aware placement of UAV base stations over ground users.

Coverage circles are grown from trios of nearby unassigned users, filtered so
that no circle strays inside another by more than a tolerable depth, and
committed one at a time until every user is labeled or the fleet is exhausted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .channel import ChannelParams, CoverageProfile
from .geometry import (
    Circle,
    DegenerateGeometryError,
    FilterParams,
    all_pairs_admissible,
    circumcircle,
)
from .radio import RadioParams, evaluate_deployment
from .scenario import GroundUser

__all__ = [
    "UavPlacement",
    "IadParams",
    "Candidate",
    "AllocationResult",
    "Deployment",
    "allocation",
    "initial_candidate",
    "expand_candidates",
    "deploy",
    "satisfaction_of",
]


@dataclass(frozen=True)
class UavPlacement:
    """A hovering base station: horizontal position, altitude, coverage radius."""

    x: float
    y: float
    altitude_m: float
    radius_m: float

    def __post_init__(self) -> None:
        if self.altitude_m <= 0 or self.radius_m <= 0:
            raise ValueError("altitude and radius must be positive")

    @property
    def coverage(self) -> Circle:
        return Circle(self.x, self.y, self.radius_m)


@dataclass(frozen=True)
class IadParams:
    """Knobs for the placement pass: fleet size, load bounds, filter depth."""

    k: int = 25
    n_min: int = 10
    c_max_bps: float = 1.5e8
    c_min_bps: float = 3.0e6
    d_tolerable_m: float = 60.0
    m: int = 1
    max_seed_attempts: int | None = None
    rho: float = 0.0  # accepted for interface compatibility, never read

    def __post_init__(self) -> None:
        if self.k < 1 or self.n_min < 1 or self.m < 1:
            raise ValueError("k, n_min and m must be positive")
        if self.c_max_bps <= 0 or self.c_min_bps <= 0:
            raise ValueError("capacities must be positive")
        if self.d_tolerable_m < 0:
            raise ValueError("tolerable depth must be non-negative")
        if self.max_seed_attempts is not None and self.max_seed_attempts < 1:
            raise ValueError("seed attempt budget must be positive when given")
        if self.n_max < self.n_min:
            raise ValueError(
                f"load window empty: backhaul admits {self.n_max} users, floor is {self.n_min}"
            )

    @property
    def n_max(self) -> int:
        """Largest association count the backhaul supports at the per-user rate."""
        return int(self.c_max_bps // self.c_min_bps)


@dataclass(frozen=True)
class Candidate:
    """A circumcircle candidate and the users that would associate to it."""

    circumcircle: Circle
    coverage_radius_m: float
    gu_indices: tuple[int, ...]

    @property
    def coverage_circle(self) -> Circle:
        return Circle(self.circumcircle.center_x, self.circumcircle.center_y, self.coverage_radius_m)


@dataclass(frozen=True)
class AllocationResult:
    """Users a candidate center would serve, nearest first, capped by load."""

    count: int
    radii: tuple[float, ...]
    gu_indices: tuple[int, ...]


@dataclass(frozen=True)
class Deployment:
    """Committed placements plus the user-to-UAV association they induce."""

    placements: tuple[UavPlacement, ...]
    association: tuple[int | None, ...]
    seed: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "placements": [
                {"x": p.x, "y": p.y, "altitude": p.altitude_m, "radius": p.radius_m}
                for p in self.placements
            ],
            "association": [a for a in self.association],
            "seed": self.seed,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Deployment":
        try:
            placements = tuple(
                UavPlacement(
                    x=float(p["x"]),
                    y=float(p["y"]),
                    altitude_m=float(p["altitude"]),
                    radius_m=float(p["radius"]),
                )
                for p in data["placements"]
            )
            association = tuple(None if a is None else int(a) for a in data["association"])
            seed = data.get("seed")
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed deployment record: {exc}") from exc
        for i, a in enumerate(association):
            if a is not None and not (0 <= a < len(placements)):
                raise ValueError(f"association of user {i} references missing UAV {a}")
        return cls(placements=placements, association=association,
                   seed=None if seed is None else int(seed))


def _alloc_arrays(
    cx: float,
    cy: float,
    xs: np.ndarray,
    ys: np.ndarray,
    unassigned: np.ndarray,
    r_max_m: float,
    n_max: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Indices and radii of unassigned users a center would serve, nearest first."""
    d = np.hypot(xs[unassigned] - cx, ys[unassigned] - cy)
    within = d <= r_max_m
    idx = unassigned[within]
    d = d[within]
    order = np.argsort(d, kind="stable")
    idx = idx[order][:n_max]
    d = d[order][:n_max]
    return idx, d


def allocation(
    center: tuple[float, float],
    gus: Sequence[GroundUser],
    assigned: Sequence[bool],
    profile: CoverageProfile,
    params: IadParams,
) -> AllocationResult:
    """Rank unassigned users by distance from a candidate center and cap the load."""
    xs = np.array([g.x for g in gus])
    ys = np.array([g.y for g in gus])
    unassigned = np.flatnonzero(~np.asarray(assigned, dtype=bool))
    idx, d = _alloc_arrays(center[0], center[1], xs, ys, unassigned, profile.r_max_m, params.n_max)
    return AllocationResult(
        count=len(idx),
        radii=tuple(float(v) for v in d),
        gu_indices=tuple(int(v) for v in idx),
    )


def _nearest_two(seed: int, xs: np.ndarray, ys: np.ndarray, pool: np.ndarray) -> np.ndarray:
    """The two pool members nearest the seed, excluding the seed itself."""
    others = pool[pool != seed]
    d = np.hypot(xs[others] - xs[seed], ys[others] - ys[seed])
    order = np.argsort(d, kind="stable")
    return others[order[:2]]


def initial_candidate(
    seed_gu: int,
    gus: Sequence[GroundUser],
    assigned: Sequence[bool],
) -> tuple[Circle, tuple[int, int, int]]:
    """Circumcircle through a seed user and its two nearest unassigned neighbors."""
    xs = np.array([g.x for g in gus])
    ys = np.array([g.y for g in gus])
    unassigned = np.flatnonzero(~np.asarray(assigned, dtype=bool))
    if seed_gu not in unassigned:
        raise ValueError(f"seed user {seed_gu} is already assigned")
    if len(unassigned) < 3:
        raise ValueError("need at least three unassigned users")
    pair = _nearest_two(seed_gu, xs, ys, unassigned)
    trio = (int(seed_gu), int(pair[0]), int(pair[1]))
    circle = circumcircle(*((xs[i], ys[i]) for i in trio))
    return circle, trio


def _candidate_from_circle(
    circle: Circle,
    members: tuple[int, ...],
    xs: np.ndarray,
    ys: np.ndarray,
    unassigned: np.ndarray,
    profile: CoverageProfile,
    params: IadParams,
) -> Candidate | None:
    """Attach an allocation to a circumcircle; None when the load floor fails."""
    idx, d = _alloc_arrays(
        circle.center_x, circle.center_y, xs, ys, unassigned, profile.r_max_m, params.n_max
    )
    if len(idx) < params.n_min:
        return None
    coverage = min(float(d[-1]), profile.r_max_m) if len(d) else profile.r_max_m
    if coverage <= 0:
        return None
    return Candidate(
        circumcircle=circle,
        coverage_radius_m=coverage,
        gu_indices=tuple(int(v) for v in idx),
    )


def expand_candidates(
    base: Candidate,
    trio: tuple[int, int, int],
    gus: Sequence[GroundUser],
    assigned: Sequence[bool],
    deployed: Sequence[Circle],
    profile: CoverageProfile,
    params: IadParams,
    fp: FilterParams,
) -> list[Candidate]:
    """Grow a candidate by folding in nearby users, keeping admissible enlargements."""
    xs = np.array([g.x for g in gus])
    ys = np.array([g.y for g in gus])
    unassigned = np.flatnonzero(~np.asarray(assigned, dtype=bool))
    return _expand(base, trio, xs, ys, unassigned, list(deployed), profile, params, fp)


def _expand(
    base: Candidate,
    trio: tuple[int, int, int],
    xs: np.ndarray,
    ys: np.ndarray,
    unassigned: np.ndarray,
    deployed: list[Circle],
    profile: CoverageProfile,
    params: IadParams,
    fp: FilterParams,
) -> list[Candidate]:
    kept: list[Candidate] = [base]
    current = base
    support = tuple(trio)
    considered = set(trio)
    for _ in range(params.m):
        cx, cy = current.circumcircle.center_x, current.circumcircle.center_y
        pool = unassigned[~np.isin(unassigned, list(considered))]
        if len(pool) == 0:
            break
        d = np.hypot(xs[pool] - cx, ys[pool] - cy)
        extra = int(pool[int(np.argmin(d))])
        considered.add(extra)
        quad = support + (extra,)
        best: Candidate | None = None
        best_support: tuple[int, ...] = support
        for drop in range(4):
            sub = tuple(q for idx_q, q in enumerate(quad) if idx_q != drop)
            try:
                circle = circumcircle(*((xs[i], ys[i]) for i in sub))
            except DegenerateGeometryError:
                continue
            cand = _candidate_from_circle(circle, sub, xs, ys, unassigned, profile, params)
            if cand is None:
                continue
            if deployed and not all_pairs_admissible(cand.coverage_circle, deployed, fp):
                continue
            if best is None or cand.coverage_radius_m > best.coverage_radius_m:
                best = cand
                best_support = sub
        if best is None:
            continue
        kept.append(best)
        current = best
        support = best_support
        considered |= set(best_support)
    return kept


def deploy(
    gus: Sequence[GroundUser],
    profile: CoverageProfile,
    params: IadParams,
    seed: int = 0,
) -> Deployment:
    """Place up to k UAVs over the users and return placements plus association.

    Each round seeds a candidate circle from a random unassigned user, widens
    it while the inter-circle filter holds, then commits the widest version and
    labels its users. Rounds repeat until everyone is labeled, the fleet is
    spent, or no seed yields an admissible circle.
    """
    rng = np.random.default_rng(seed)
    n = len(gus)
    xs = np.array([g.x for g in gus])
    ys = np.array([g.y for g in gus])
    assigned = np.zeros(n, dtype=bool)
    owner = np.full(n, -1, dtype=np.int64)
    fp = FilterParams(d_tolerable_m=params.d_tolerable_m)
    placements: list[UavPlacement] = []
    circles: list[Circle] = []

    while len(placements) < params.k:
        unassigned = np.flatnonzero(~assigned)
        if len(unassigned) < max(3, params.n_min):
            break
        budget = params.max_seed_attempts if params.max_seed_attempts is not None else len(unassigned)
        tried: set[int] = set()
        committed = False
        while len(tried) < min(budget, len(unassigned)):
            pool = np.array([i for i in unassigned if i not in tried])
            seed_gu = int(pool[int(rng.integers(len(pool)))])
            tried.add(seed_gu)
            pair = _nearest_two(seed_gu, xs, ys, unassigned)
            trio = (seed_gu, int(pair[0]), int(pair[1]))
            try:
                circle = circumcircle(*((xs[i], ys[i]) for i in trio))
            except DegenerateGeometryError:
                continue
            base = _candidate_from_circle(circle, trio, xs, ys, unassigned, profile, params)
            if base is None:
                continue
            if circles and not all_pairs_admissible(base.coverage_circle, circles, fp):
                continue
            kept = _expand(base, trio, xs, ys, unassigned, circles, profile, params, fp)
            best = max(kept, key=lambda c: c.coverage_radius_m)
            radius = min(best.coverage_radius_m, profile.r_max_m)
            altitude = min(radius * profile.altitude_ratio, profile.h_max_m)
            placement = UavPlacement(
                x=best.circumcircle.center_x,
                y=best.circumcircle.center_y,
                altitude_m=altitude,
                radius_m=radius,
            )
            j = len(placements)
            placements.append(placement)
            circles.append(placement.coverage)
            members = np.array(best.gu_indices, dtype=np.int64)
            assigned[members] = True
            owner[members] = j
            committed = True
            break
        if not committed:
            break

    association = tuple(None if owner[i] < 0 else int(owner[i]) for i in range(n))
    return Deployment(placements=tuple(placements), association=association, seed=seed)


def satisfaction_of(
    deployment: Deployment,
    gus: Sequence[GroundUser],
    channel: ChannelParams,
    radio: RadioParams,
    n_min: int | None = None,
) -> float:
    """Fraction of users whose rate and coverage constraints both hold."""
    report = evaluate_deployment(
        gus, deployment.placements, deployment.association, channel, radio, n_min=n_min
    )
    return report.satisfaction
