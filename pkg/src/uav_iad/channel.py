"""Air-to-ground propagation model.

Elevation-angle LoS probability mixed over free-space LoS/NLoS losses, and
the numeric search for the elevation angle that maximizes coverage radius
at a fixed allowable path loss.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

__all__ = [
    "ChannelParams",
    "LinkGeometry",
    "CoverageProfile",
    "ChannelDomainError",
    "InfeasibleLossError",
    "DENSE_URBAN",
    "los_probability",
    "path_loss",
    "average_path_loss",
    "radius_at_loss",
    "optimal_elevation_angle",
]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class ChannelDomainError(ValueError):
    """Input outside the physical domain of the propagation model."""


class InfeasibleLossError(ValueError):
    """The allowable path loss cannot be met by any positive radius."""


@dataclass(frozen=True)
class ChannelParams:
    """Environment constants of the elevation-angle LoS model.

    ``a`` and ``b`` shape the LoS-probability sigmoid; ``eta_los_db`` and
    ``eta_nlos_db`` are the mean additional losses on top of free space.
    """

    a: float
    b: float
    eta_los_db: float
    eta_nlos_db: float
    carrier_freq_hz: float = 2.4e9
    speed_of_light_mps: float = 3.0e8

    def __post_init__(self) -> None:
        if self.a <= 0 or self.b <= 0:
            raise ValueError("environment constants a and b must be positive")
        if self.eta_los_db < 0 or self.eta_nlos_db < self.eta_los_db:
            raise ValueError("need eta_nlos_db >= eta_los_db >= 0")
        if self.carrier_freq_hz <= 0 or self.speed_of_light_mps <= 0:
            raise ValueError("carrier frequency and propagation speed must be positive")


#: Dense-urban environment constants (a, b, eta_LoS, eta_NLoS) at 2.4 GHz.
DENSE_URBAN = ChannelParams(a=12.08, b=0.11, eta_los_db=1.6, eta_nlos_db=23.0)


@dataclass(frozen=True)
class LinkGeometry:
    """Geometry of one ground-to-air link.

    Consistency of the four fields is enforced at construction; build via
    :meth:`from_horizontal` in normal use.
    """

    horizontal_distance_m: float
    altitude_m: float
    slant_distance_m: float
    elevation_deg: float

    def __post_init__(self) -> None:
        if self.altitude_m <= 0:
            raise ChannelDomainError("altitude must be positive")
        if self.horizontal_distance_m < 0:
            raise ChannelDomainError("horizontal distance must be non-negative")
        d = math.hypot(self.horizontal_distance_m, self.altitude_m)
        if d <= 0:
            raise ChannelDomainError("slant distance must be positive")
        if abs(self.slant_distance_m - d) > 1e-9 * d:
            raise ChannelDomainError("slant distance inconsistent with (r, h)")
        theta = math.degrees(math.asin(self.altitude_m / self.slant_distance_m))
        if not (0.0 < self.elevation_deg <= 90.0):
            raise ChannelDomainError("elevation angle must lie in (0, 90] degrees")
        if abs(self.elevation_deg - theta) > 1e-6:
            raise ChannelDomainError("elevation angle inconsistent with (h, d)")

    @classmethod
    def from_horizontal(cls, horizontal_distance_m: float, altitude_m: float) -> "LinkGeometry":
        """Build the link from horizontal distance and UAV altitude."""
        if altitude_m <= 0:
            raise ChannelDomainError("altitude must be positive")
        if horizontal_distance_m < 0:
            raise ChannelDomainError("horizontal distance must be non-negative")
        d = math.hypot(horizontal_distance_m, altitude_m)
        theta = math.degrees(math.asin(altitude_m / d))
        return cls(horizontal_distance_m, altitude_m, d, theta)


@dataclass(frozen=True)
class CoverageProfile:
    """Elevation angle and radius limits shared by every placement.

    ``theta_opt_deg`` fixes the altitude-to-radius ratio of all UAVs;
    ``r_max_m`` is the radius at which that angle reaches ``h_max_m``.
    """

    theta_opt_deg: float
    r_max_m: float
    h_max_m: float
    l_allow_db: float

    @property
    def altitude_ratio(self) -> float:
        """Altitude per meter of coverage radius, tan(theta_opt)."""
        return math.tan(math.radians(self.theta_opt_deg))


def los_probability(elevation_deg: float, params: ChannelParams) -> float:
    """Probability of a line-of-sight link at the given elevation angle.

    Sigmoid in the elevation angle (degrees); strictly increasing.
    """
    if not (0.0 < elevation_deg <= 90.0):
        raise ChannelDomainError(
            f"elevation angle must lie in (0, 90] degrees, got {elevation_deg}"
        )
    return 1.0 / (1.0 + params.a * math.exp(-params.b * (elevation_deg - params.a)))


def path_loss(link: LinkGeometry, params: ChannelParams, mode: Literal["los", "nlos"]) -> float:
    """Free-space loss over the slant path plus the mode's mean excess loss, in dB."""
    if link.slant_distance_m <= 0:
        raise ChannelDomainError("slant distance must be positive")
    if mode == "los":
        eta = params.eta_los_db
    elif mode == "nlos":
        eta = params.eta_nlos_db
    else:
        raise ValueError(f"mode must be 'los' or 'nlos', got {mode!r}")
    fspl = 20.0 * math.log10(
        4.0 * math.pi * params.carrier_freq_hz * link.slant_distance_m / params.speed_of_light_mps
    )
    return fspl + eta


def average_path_loss(link: LinkGeometry, params: ChannelParams) -> float:
    """LoS-probability-weighted mean of the LoS and NLoS losses, in dB."""
    p = los_probability(link.elevation_deg, params)
    return p * path_loss(link, params, "los") + (1.0 - p) * path_loss(link, params, "nlos")


def radius_at_loss(
    theta_deg: float,
    l_allow_db: float,
    params: ChannelParams,
    r_tol_m: float = 1e-3,
) -> float:
    """Horizontal radius at which the averaged loss reaches ``l_allow_db``.

    The cell edge is constrained to the ray of elevation angle ``theta_deg``
    (altitude h = r tan(theta)); the averaged loss is strictly increasing in
    r along that ray, so the radius is found by bisection.
    """
    if not (0.0 < theta_deg < 90.0):
        raise ChannelDomainError("elevation angle must lie in (0, 90) degrees")
    tan_t = math.tan(math.radians(theta_deg))

    def loss(r: float) -> float:
        return average_path_loss(LinkGeometry.from_horizontal(r, r * tan_t), params)

    lo = 1e-9
    if loss(lo) >= l_allow_db:
        raise InfeasibleLossError(
            f"allowable loss {l_allow_db} dB is below the minimum achievable averaged loss"
        )
    hi = 1.0
    for _ in range(200):
        if loss(hi) > l_allow_db:
            break
        hi *= 2.0
    else:
        raise InfeasibleLossError("no finite radius reaches the allowable loss")
    while hi - lo > r_tol_m:
        mid = 0.5 * (lo + hi)
        if loss(mid) > l_allow_db:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def optimal_elevation_angle(
    l_allow_db: float,
    h_max_m: float,
    params: ChannelParams,
    theta_tol_deg: float = 1e-4,
    r_tol_m: float = 1e-3,
) -> CoverageProfile:
    """Elevation angle maximizing the loss-limited radius, and the r_max it implies.

    A coarse 1-degree scan brackets the best angle; golden-section refines it
    to ``theta_tol_deg``. The returned r_max is the loss-limited radius at the
    optimal angle, capped at ``h_max / tan(theta_opt)`` where a cell flying
    the optimal angle hits the altitude ceiling.
    """
    if h_max_m <= 0:
        raise ChannelDomainError("maximum altitude must be positive")

    def achievable(theta: float) -> float:
        return radius_at_loss(theta, l_allow_db, params, r_tol_m)

    grid = [float(t) for t in range(1, 90)]
    best = max(grid, key=achievable)
    lo = max(best - 1.0, 1e-3)
    hi = min(best + 1.0, 90.0 - 1e-3)

    c = hi - _GOLDEN * (hi - lo)
    d = lo + _GOLDEN * (hi - lo)
    fc, fd = achievable(c), achievable(d)
    while hi - lo > theta_tol_deg:
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - _GOLDEN * (hi - lo)
            fc = achievable(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _GOLDEN * (hi - lo)
            fd = achievable(d)
    # the refined midpoint can land a bisection quantum below the scan best
    theta_opt = max((0.5 * (lo + hi), best), key=achievable)
    r_max = min(achievable(theta_opt), h_max_m / math.tan(math.radians(theta_opt)))
    return CoverageProfile(theta_opt, r_max, h_max_m, l_allow_db)
