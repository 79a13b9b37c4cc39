"""Planar primitives: circumcircles and the coverage-overlap admissibility filter."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "Circle",
    "FilterParams",
    "DegenerateGeometryError",
    "circumcircle",
    "overlap_filter",
    "all_pairs_admissible",
]

# triangles flatter than this are treated as collinear (area in m^2)
COLLINEAR_AREA_TOL = 1e-9


class DegenerateGeometryError(ValueError):
    """Collinear or duplicate points with no well-defined circumcircle."""


@dataclass(frozen=True)
class Circle:
    center_x: float
    center_y: float
    radius: float

    def __post_init__(self) -> None:
        if self.radius <= 0:
            raise ValueError("circle radius must be positive")

    def center_distance(self, other: "Circle") -> float:
        return math.hypot(self.center_x - other.center_x, self.center_y - other.center_y)


@dataclass(frozen=True)
class FilterParams:
    """Maximum permitted overlap depth between two coverage discs."""

    d_tolerable_m: float

    def __post_init__(self) -> None:
        if self.d_tolerable_m < 0:
            raise ValueError("tolerable distance must be non-negative")


def circumcircle(
    p1: Sequence[float], p2: Sequence[float], p3: Sequence[float]
) -> Circle:
    """Circle through three non-collinear points.

    Raises DegenerateGeometryError when the triangle area falls below
    COLLINEAR_AREA_TOL; callers resample their points in that case.
    """
    bx = p2[0] - p1[0]
    by = p2[1] - p1[1]
    cx = p3[0] - p1[0]
    cy = p3[1] - p1[1]
    cross = bx * cy - by * cx
    if abs(cross) / 2.0 <= COLLINEAR_AREA_TOL:
        raise DegenerateGeometryError("points are collinear or coincident")
    d = 2.0 * cross
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    ux = (cy * b2 - by * c2) / d
    uy = (bx * c2 - cx * b2) / d
    return Circle(p1[0] + ux, p1[1] + uy, math.hypot(ux, uy))


def overlap_filter(candidate: Circle, existing: Circle, fp: FilterParams) -> bool:
    """Admissibility of a candidate disc next to one deployed disc.

    True when the discs are disjoint or overlap by less than the tolerable
    distance, and neither center lies inside the other disc.
    """
    d = candidate.center_distance(existing)
    separated = d > candidate.radius + existing.radius
    shallow = candidate.radius + existing.radius - d < fp.d_tolerable_m
    return (separated or shallow) and d > candidate.radius and d > existing.radius


def all_pairs_admissible(
    candidate: Circle, deployed: Iterable[Circle], fp: FilterParams
) -> bool:
    """Candidate passes the overlap filter against every deployed disc."""
    return all(overlap_filter(candidate, circle, fp) for circle in deployed)
