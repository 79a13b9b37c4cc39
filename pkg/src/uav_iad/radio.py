"""Link-level SINR, per-user rates, and the user-satisfaction objective.

Interference accrues only from non-serving coverage discs that contain the
user; bandwidth is split equally among a UAV's associated users.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .channel import ChannelParams, LinkGeometry, average_path_loss
from .scenario import GroundUser

if TYPE_CHECKING:
    from .deploy import UavPlacement

__all__ = [
    "RadioParams",
    "LinkAssessment",
    "EvaluationReport",
    "interference_power",
    "assess_link",
    "evaluate_deployment",
]


@dataclass(frozen=True)
class RadioParams:
    """Link constants: transmit power, bandwidth, noise, and rate requirements."""

    tx_power_dbm: float = 20.0
    total_bandwidth_hz: float = 2.0e7
    noise_psd_dbm_hz: float = -174.0
    sinr_threshold_db: float = 5.0
    backhaul_capacity_bps: float = 1.5e8
    min_rate_bps: float = 3.0e6
    rate_levels_bps: tuple[float, ...] = (1e6, 2e6, 3e6, 4e6, 5e6, 6e6)

    def __post_init__(self) -> None:
        if self.total_bandwidth_hz <= 0 or self.backhaul_capacity_bps <= 0:
            raise ValueError("bandwidth and backhaul capacity must be positive")
        if self.min_rate_bps <= 0 or not self.rate_levels_bps:
            raise ValueError("need a positive minimum rate and non-empty rate levels")
        if self.min_rate_bps not in self.rate_levels_bps:
            raise ValueError("minimum rate must be one of the admissible rate levels")
        n_max = self.max_load
        if n_max < 1:
            raise ValueError("backhaul capacity admits no user at the minimum rate")
        # tightest per-user bandwidth still clears the SINR-threshold rate
        c_th = (self.total_bandwidth_hz / n_max) * math.log2(1.0 + self.sinr_threshold_linear)
        if self.min_rate_bps < c_th:
            raise ValueError(
                f"minimum rate {self.min_rate_bps} bps below the threshold rate {c_th:.0f} bps"
            )

    @property
    def tx_power_mw(self) -> float:
        return 10.0 ** (self.tx_power_dbm / 10.0)

    @property
    def noise_psd_mw_per_hz(self) -> float:
        return 10.0 ** (self.noise_psd_dbm_hz / 10.0)

    @property
    def sinr_threshold_linear(self) -> float:
        return 10.0 ** (self.sinr_threshold_db / 10.0)

    @property
    def max_load(self) -> int:
        """Largest association count the backhaul supports at the minimum rate."""
        return int(self.backhaul_capacity_bps // self.min_rate_bps)


@dataclass(frozen=True)
class LinkAssessment:
    """One served user's link figures under the current association."""

    serving_uav: int
    sinr_linear: float
    allocated_bandwidth_hz: float
    rate_bps: float
    interference_mw: float
    satisfied: bool

    def to_json_dict(self) -> dict:
        return {
            "serving_uav": self.serving_uav,
            "sinr_linear": self.sinr_linear,
            "allocated_bandwidth_hz": self.allocated_bandwidth_hz,
            "rate_bps": self.rate_bps,
            "interference_mw": self.interference_mw,
            "satisfied": self.satisfied,
        }


@dataclass(frozen=True)
class EvaluationReport:
    """Deployment-wide evaluation: per-user links, per-UAV loads, satisfaction."""

    per_gu: tuple[LinkAssessment | None, ...]
    per_uav_load: tuple[int, ...]
    per_uav_sum_rate_bps: tuple[float, ...]
    satisfaction: float
    constraint_flags: dict[str, tuple[int, ...]]

    def to_json_dict(self) -> dict:
        return {
            "per_gu": [a.to_json_dict() if a is not None else None for a in self.per_gu],
            "per_uav_load": list(self.per_uav_load),
            "per_uav_sum_rate_bps": list(self.per_uav_sum_rate_bps),
            "satisfaction": self.satisfaction,
            "constraint_flags": {k: list(v) for k, v in self.constraint_flags.items()},
        }


def _received_power_mw(
    gu_x: float, gu_y: float, placement: "UavPlacement", channel: ChannelParams, radio: RadioParams
) -> float:
    r = math.hypot(gu_x - placement.x, gu_y - placement.y)
    link = LinkGeometry.from_horizontal(r, placement.altitude_m)
    return radio.tx_power_mw * 10.0 ** (-average_path_loss(link, channel) / 10.0)


def interference_power(
    gu: GroundUser,
    serving: int,
    placements: Sequence["UavPlacement"],
    channel: ChannelParams,
    radio: RadioParams,
) -> float:
    """Sum of received powers from non-serving UAVs whose disc contains the user, in mW.

    Zero when the user sits outside the serving disc or inside no other disc.
    """
    if not (0 <= serving < len(placements)):
        raise ValueError(f"serving index {serving} out of range for {len(placements)} placements")
    serving_p = placements[serving]
    if math.hypot(gu.x - serving_p.x, gu.y - serving_p.y) > serving_p.radius_m:
        return 0.0
    total = 0.0
    for j, p in enumerate(placements):
        if j == serving:
            continue
        if math.hypot(gu.x - p.x, gu.y - p.y) <= p.radius_m:
            total += _received_power_mw(gu.x, gu.y, p, channel, radio)
    return total


def assess_link(
    gu: GroundUser,
    serving: int,
    placements: Sequence["UavPlacement"],
    channel: ChannelParams,
    radio: RadioParams,
    load_n_j: int,
) -> LinkAssessment:
    """Assess one user's link given its serving UAV's association count."""
    if load_n_j < 1:
        raise ValueError("association count must be at least 1")
    serving_p = placements[serving]
    bandwidth = radio.total_bandwidth_hz / load_n_j
    signal = _received_power_mw(gu.x, gu.y, serving_p, channel, radio)
    interference = interference_power(gu, serving, placements, channel, radio)
    noise = bandwidth * radio.noise_psd_mw_per_hz
    sinr = signal / (interference + noise)
    rate = bandwidth * math.log2(1.0 + sinr)
    in_disc = math.hypot(gu.x - serving_p.x, gu.y - serving_p.y) <= serving_p.radius_m
    return LinkAssessment(
        serving_uav=serving,
        sinr_linear=sinr,
        allocated_bandwidth_hz=bandwidth,
        rate_bps=rate,
        interference_mw=interference,
        satisfied=bool(rate >= radio.min_rate_bps and in_disc),
    )


def evaluate_deployment(
    gus: Sequence[GroundUser],
    placements: Sequence["UavPlacement"],
    association: Sequence[int | None],
    channel: ChannelParams,
    radio: RadioParams,
    n_min: int | None = None,
) -> EvaluationReport:
    """Score a deployment: every user's link, per-UAV loads and sum rates, satisfaction.

    Association is one optional UAV index per user. Bound violations (loads
    outside [n_min, max_load], backhaul overruns) are reported as flags, not
    errors, so unconstrained baselines can still be scored.
    """
    n = len(gus)
    k = len(placements)
    if len(association) != n:
        raise ValueError("association must assign one optional UAV index per user")
    assoc = np.full(n, -1, dtype=np.int64)
    for i, a in enumerate(association):
        if a is None:
            continue
        if not (0 <= a < k):
            raise ValueError(f"association of user {i} references missing UAV {a}")
        assoc[i] = a

    loads = np.bincount(assoc[assoc >= 0], minlength=k) if k else np.zeros(0, dtype=np.int64)

    if n == 0 or k == 0 or not (assoc >= 0).any():
        flags = _constraint_flags(loads, np.zeros(k), radio, n_min)
        return EvaluationReport(
            per_gu=tuple(None for _ in range(n)),
            per_uav_load=tuple(int(v) for v in loads),
            per_uav_sum_rate_bps=tuple(0.0 for _ in range(k)),
            satisfaction=0.0,
            constraint_flags=flags,
        )

    gx = np.array([g.x for g in gus])
    gy = np.array([g.y for g in gus])
    px = np.array([p.x for p in placements])
    py = np.array([p.y for p in placements])
    alt = np.array([p.altitude_m for p in placements])
    rad = np.array([p.radius_m for p in placements])

    r_h = np.hypot(gx[:, None] - px[None, :], gy[:, None] - py[None, :])
    slant = np.hypot(r_h, alt[None, :])
    theta = np.degrees(np.arcsin(alt[None, :] / slant))
    p_los = 1.0 / (1.0 + channel.a * np.exp(-channel.b * (theta - channel.a)))
    fspl = 20.0 * np.log10(
        4.0 * np.pi * channel.carrier_freq_hz * slant / channel.speed_of_light_mps
    )
    loss = fspl + p_los * channel.eta_los_db + (1.0 - p_los) * channel.eta_nlos_db
    received = radio.tx_power_mw * 10.0 ** (-loss / 10.0)
    in_disc = r_h <= rad[None, :]

    served = assoc >= 0
    serving = np.where(served, assoc, 0)
    rows = np.arange(n)
    in_serving = in_disc[rows, serving] & served

    interferer = in_disc & served[:, None] & in_serving[:, None]
    interferer[rows, serving] = False
    interference = np.where(in_serving, (received * interferer).sum(axis=1), 0.0)

    bandwidth = np.where(served, radio.total_bandwidth_hz / np.maximum(loads[serving], 1), 0.0)
    noise = bandwidth * radio.noise_psd_mw_per_hz
    signal = received[rows, serving]
    with np.errstate(divide="ignore", invalid="ignore"):
        sinr = np.where(served, signal / (interference + noise), 0.0)
    rate = np.where(served, bandwidth * np.log2(1.0 + sinr), 0.0)
    satisfied = served & in_serving & (rate >= radio.min_rate_bps)

    sum_rate = np.bincount(
        serving[satisfied], weights=rate[satisfied], minlength=k
    ) if satisfied.any() else np.zeros(k)

    per_gu: list[LinkAssessment | None] = []
    for i in range(n):
        if not served[i]:
            per_gu.append(None)
            continue
        per_gu.append(
            LinkAssessment(
                serving_uav=int(assoc[i]),
                sinr_linear=float(sinr[i]),
                allocated_bandwidth_hz=float(bandwidth[i]),
                rate_bps=float(rate[i]),
                interference_mw=float(interference[i]),
                satisfied=bool(satisfied[i]),
            )
        )

    flags = _constraint_flags(loads, sum_rate, radio, n_min)
    return EvaluationReport(
        per_gu=tuple(per_gu),
        per_uav_load=tuple(int(v) for v in loads),
        per_uav_sum_rate_bps=tuple(float(v) for v in sum_rate),
        satisfaction=float(np.count_nonzero(satisfied)) / n,
        constraint_flags=flags,
    )


def _constraint_flags(
    loads: np.ndarray, sum_rate: np.ndarray, radio: RadioParams, n_min: int | None
) -> dict[str, tuple[int, ...]]:
    flags: dict[str, tuple[int, ...]] = {}
    if n_min is not None:
        below = tuple(int(j) for j in np.flatnonzero(loads < n_min))
        if below:
            flags["load_below_min"] = below
    above = tuple(int(j) for j in np.flatnonzero(loads > radio.max_load))
    if above:
        flags["load_above_max"] = above
    over = tuple(int(j) for j in np.flatnonzero(sum_rate > radio.backhaul_capacity_bps))
    if over:
        flags["backhaul_exceeded"] = over
    return flags
