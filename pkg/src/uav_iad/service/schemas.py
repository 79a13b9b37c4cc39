"""Request/response models for the HTTP service.

Domain validation stays in the core dataclasses; these models carry shapes
over the wire and convert to and from the domain types.
"""
from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

from ..channel import ChannelParams, CoverageProfile
from ..deploy import Deployment, IadParams
from ..radio import EvaluationReport, RadioParams
from ..scenario import ScenarioSpec

Point = tuple[float, float]


class ChannelModel(BaseModel):
    a: float = 12.08
    b: float = 0.11
    eta_los_db: float = 1.6
    eta_nlos_db: float = 23.0
    carrier_freq_hz: float = 2.4e9
    speed_of_light_mps: float = 3.0e8

    def to_domain(self) -> ChannelParams:
        return ChannelParams(**self.model_dump())


class RadioModel(BaseModel):
    tx_power_dbm: float = 20.0
    total_bandwidth_hz: float = 2.0e7
    noise_psd_dbm_hz: float = -174.0
    sinr_threshold_db: float = 5.0
    backhaul_capacity_bps: float = 1.5e8
    min_rate_bps: float = 3.0e6
    rate_levels_bps: tuple[float, ...] = (1e6, 2e6, 3e6, 4e6, 5e6, 6e6)

    def to_domain(self) -> RadioParams:
        return RadioParams(**self.model_dump())


class IadModel(BaseModel):
    k: int = 25
    n_min: int = 10
    c_max_bps: float = 1.5e8
    c_min_bps: float = 3.0e6
    d_tolerable_m: float = 60.0
    m: int = 1
    max_seed_attempts: int | None = None
    rho: float = 0.0

    def to_domain(self) -> IadParams:
        return IadParams(**self.model_dump())


class ScenarioSpecModel(BaseModel):
    width_m: float = 600.0
    height_m: float = 600.0
    n_users: int = 600
    hotspot_count_range: tuple[int, int] = (24, 32)
    hotspot_sigma_range_m: tuple[float, float] = (3.0, 9.0)
    background_fraction: float = 0.2
    seed: int = 0

    def to_domain(self) -> ScenarioSpec:
        return ScenarioSpec(**self.model_dump())

    @classmethod
    def from_domain(cls, spec: ScenarioSpec) -> "ScenarioSpecModel":
        return cls(
            width_m=spec.width_m,
            height_m=spec.height_m,
            n_users=spec.n_users,
            hotspot_count_range=spec.hotspot_count_range,
            hotspot_sigma_range_m=spec.hotspot_sigma_range_m,
            background_fraction=spec.background_fraction,
            seed=spec.seed,
        )


class CoverageProfileModel(BaseModel):
    theta_opt_deg: float
    r_max_m: float
    h_max_m: float
    l_allow_db: float

    @classmethod
    def from_domain(cls, profile: CoverageProfile) -> "CoverageProfileModel":
        return cls(
            theta_opt_deg=profile.theta_opt_deg,
            r_max_m=profile.r_max_m,
            h_max_m=profile.h_max_m,
            l_allow_db=profile.l_allow_db,
        )


class ProfileRequest(BaseModel):
    channel: ChannelModel = Field(default_factory=ChannelModel)
    l_allow_db: float = 119.0
    h_max_m: float = 120.0


class GenerateRequest(BaseModel):
    spec: ScenarioSpecModel = Field(default_factory=ScenarioSpecModel)


class ScenarioFileModel(BaseModel):
    """Same shape as the on-disk scenario file."""

    format_version: Literal[1] = 1
    spec: ScenarioSpecModel
    points: list[Point]


class PlacementModel(BaseModel):
    x: float
    y: float
    altitude: float
    radius: float


class DeploymentModel(BaseModel):
    placements: list[PlacementModel]
    association: list[int | None]
    seed: int | None = None

    @classmethod
    def from_domain(cls, dep: Deployment) -> "DeploymentModel":
        return cls(**dep.to_json_dict())

    def to_domain(self) -> Deployment:
        return Deployment.from_json_dict(self.model_dump())


class DeployRequest(BaseModel):
    channel: ChannelModel = Field(default_factory=ChannelModel)
    l_allow_db: float = 119.0
    h_max_m: float = 120.0
    radio: RadioModel = Field(default_factory=RadioModel)
    iad: IadModel = Field(default_factory=IadModel)
    method: Literal["iad", "kmeanspp"] = "iad"
    seed: int = 0
    points: list[Point]


class DeployResponse(BaseModel):
    deployment: DeploymentModel
    profile: CoverageProfileModel
    satisfaction: float


class LinkAssessmentModel(BaseModel):
    serving_uav: int
    sinr_linear: float
    allocated_bandwidth_hz: float
    rate_bps: float
    interference_mw: float
    satisfied: bool


class EvaluationReportModel(BaseModel):
    per_gu: list[LinkAssessmentModel | None]
    per_uav_load: list[int]
    per_uav_sum_rate_bps: list[float]
    satisfaction: float
    constraint_flags: dict[str, list[int]]

    @classmethod
    def from_domain(cls, report: EvaluationReport) -> "EvaluationReportModel":
        return cls(**report.to_json_dict())


class EvaluateRequest(BaseModel):
    channel: ChannelModel = Field(default_factory=ChannelModel)
    radio: RadioModel = Field(default_factory=RadioModel)
    points: list[Point]
    deployment: DeploymentModel
    n_min: int | None = None


class SweepRequest(BaseModel):
    """Carries the documented experiment config JSON verbatim."""

    config: dict


class SweepCellModel(BaseModel):
    sweep_value: float
    method: str
    mean_s: float
    std_s: float
    satisfactions: list[float]
    mean_runtime_ms: float


class SweepResponse(BaseModel):
    format_version: Literal[1] = 1
    sweep_param: str
    cells: list[SweepCellModel]
