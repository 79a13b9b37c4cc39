"""Clustering baseline: k-means++ placement with nearest-first association.

Centroids become UAV positions; each cluster's radius is the distance to its
farthest member, capped at the coverage limit. No inter-circle filtering.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .channel import CoverageProfile
from .deploy import Deployment, UavPlacement
from .radio import RadioParams
from .scenario import GroundUser

__all__ = ["KmeansParams", "kmeanspp_deploy"]

# clusters collapsing onto a point still need a positive coverage disc
_MIN_RADIUS_M = 1.0


@dataclass(frozen=True)
class KmeansParams:
    k: int = 25
    max_iters: int = 100
    tol_m: float = 1e-3
    seed: int = 0

    def __post_init__(self) -> None:
        if self.k < 1 or self.max_iters < 1 or self.tol_m <= 0:
            raise ValueError("k, iteration budget and tolerance must all be positive")


def _seed_centroids(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Spread-out initial centroids: each new one drawn with squared-distance weights."""
    n = len(points)
    centroids = np.empty((k, 2))
    centroids[0] = points[rng.integers(n)]
    d2 = np.sum((points - centroids[0]) ** 2, axis=1)
    for j in range(1, k):
        total = d2.sum()
        if total <= 0.0:
            centroids[j:] = points[rng.integers(n, size=k - j)]
            break
        centroids[j] = points[rng.choice(n, p=d2 / total)]
        d2 = np.minimum(d2, np.sum((points - centroids[j]) ** 2, axis=1))
    return centroids


def _lloyd(
    points: np.ndarray, centroids: np.ndarray, max_iters: int, tol_m: float
) -> tuple[np.ndarray, np.ndarray, list[float]]:
    """Alternate assignment and recentering; returns centroids, labels, cost history."""
    history: list[float] = []
    labels = np.zeros(len(points), dtype=np.int64)
    for _ in range(max_iters):
        d2 = np.sum((points[:, None, :] - centroids[None, :, :]) ** 2, axis=2)
        labels = np.argmin(d2, axis=1)
        history.append(float(d2[np.arange(len(points)), labels].sum()))
        new = centroids.copy()
        for j in range(len(centroids)):
            members = points[labels == j]
            if len(members):
                new[j] = members.mean(axis=0)
        shift = float(np.max(np.hypot(*(new - centroids).T)))
        centroids = new
        if shift <= tol_m:
            break
    d2 = np.sum((points[:, None, :] - centroids[None, :, :]) ** 2, axis=2)
    labels = np.argmin(d2, axis=1)
    history.append(float(d2[np.arange(len(points)), labels].sum()))
    return centroids, labels, history


def kmeanspp_deploy(
    gus: Sequence[GroundUser],
    profile: CoverageProfile,
    radio: RadioParams,
    params: KmeansParams,
) -> Deployment:
    """Cluster users into k groups and hover one UAV over each centroid.

    Association is greedy nearest-first within each cluster, truncated at the
    backhaul load cap. Empty clusters are dropped rather than placed.
    """
    n = len(gus)
    if n < params.k:
        raise ValueError(f"need at least k={params.k} users, got {n}")
    points = np.array([[g.x, g.y] for g in gus])
    rng = np.random.default_rng(params.seed)
    centroids = _seed_centroids(points, params.k, rng)
    centroids, labels, _ = _lloyd(points, centroids, params.max_iters, params.tol_m)

    n_max = radio.max_load
    placements: list[UavPlacement] = []
    owner = np.full(n, -1, dtype=np.int64)
    for j in range(params.k):
        members = np.flatnonzero(labels == j)
        if len(members) == 0:
            continue
        cx, cy = centroids[j]
        d = np.hypot(points[members, 0] - cx, points[members, 1] - cy)
        radius = min(float(d.max()), profile.r_max_m)
        radius = max(radius, _MIN_RADIUS_M)
        order = np.argsort(d, kind="stable")
        in_range = d[order] <= radius
        served = members[order][in_range][:n_max]
        altitude = min(radius * profile.altitude_ratio, profile.h_max_m)
        placement = UavPlacement(x=float(cx), y=float(cy), altitude_m=altitude, radius_m=radius)
        owner[served] = len(placements)
        placements.append(placement)

    association = tuple(None if owner[i] < 0 else int(owner[i]) for i in range(n))
    return Deployment(placements=tuple(placements), association=association, seed=params.seed)
