"""Multi-UAV base-station placement with interference-aware coverage circles.

Library layout:
  channel   air-to-ground propagation, loss budget, optimal elevation angle
  geometry  circumcircles and the inter-circle admissibility filter
  radio     SINR, rates, and the user-satisfaction objective
  scenario  ground-user distribution generation and files
  deploy    the interference-aware placement procedure
  baseline  k-means++ comparison deployment
  harness   Monte Carlo sweeps, aggregation, CSV/JSON output
  service   FastAPI wrapper; `cli` is a thin client over the same core
"""
__version__ = "0.1.0"

from .channel import (
    ChannelDomainError,
    ChannelParams,
    CoverageProfile,
    DENSE_URBAN,
    InfeasibleLossError,
    LinkGeometry,
    average_path_loss,
    los_probability,
    optimal_elevation_angle,
    path_loss,
    radius_at_loss,
)
from .geometry import (
    Circle,
    DegenerateGeometryError,
    FilterParams,
    all_pairs_admissible,
    circumcircle,
    overlap_filter,
)
from .scenario import (
    GroundUser,
    ScenarioFormatError,
    ScenarioSpec,
    generate,
    load_scenario,
    save_scenario,
)
from .radio import (
    EvaluationReport,
    LinkAssessment,
    RadioParams,
    assess_link,
    evaluate_deployment,
    interference_power,
)
from .deploy import (
    AllocationResult,
    Candidate,
    Deployment,
    IadParams,
    UavPlacement,
    allocation,
    deploy,
    expand_candidates,
    initial_candidate,
    satisfaction_of,
)
from .baseline import KmeansParams, kmeanspp_deploy
from .harness import (
    ExperimentConfig,
    SweepCell,
    SweepResult,
    SweepTrialError,
    config_from_dict,
    config_to_dict,
    default_config,
    emit,
    load_config,
    run_sweep,
)

__all__ = [
    "__version__",
    "ChannelDomainError",
    "ChannelParams",
    "CoverageProfile",
    "DENSE_URBAN",
    "InfeasibleLossError",
    "LinkGeometry",
    "average_path_loss",
    "los_probability",
    "optimal_elevation_angle",
    "path_loss",
    "radius_at_loss",
    "Circle",
    "DegenerateGeometryError",
    "FilterParams",
    "all_pairs_admissible",
    "circumcircle",
    "overlap_filter",
    "GroundUser",
    "ScenarioFormatError",
    "ScenarioSpec",
    "generate",
    "load_scenario",
    "save_scenario",
    "EvaluationReport",
    "LinkAssessment",
    "RadioParams",
    "assess_link",
    "evaluate_deployment",
    "interference_power",
    "AllocationResult",
    "Candidate",
    "Deployment",
    "IadParams",
    "UavPlacement",
    "allocation",
    "deploy",
    "expand_candidates",
    "initial_candidate",
    "satisfaction_of",
    "KmeansParams",
    "kmeanspp_deploy",
    "ExperimentConfig",
    "SweepCell",
    "SweepResult",
    "SweepTrialError",
    "config_from_dict",
    "config_to_dict",
    "default_config",
    "emit",
    "load_config",
    "run_sweep",
]
