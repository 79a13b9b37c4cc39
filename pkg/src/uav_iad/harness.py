"""Monte Carlo sweep harness: config parsing, paired-seed trials, CSV/JSON emission.

One experiment sweeps a single knob (filter depth, user count, or rate floor)
across a list of values, running every method on identical per-trial user
distributions so comparisons are paired.
"""
from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, replace
from typing import Callable, Sequence

from .baseline import KmeansParams, kmeanspp_deploy
from .channel import ChannelParams, CoverageProfile, DENSE_URBAN, optimal_elevation_angle
from .deploy import Deployment, IadParams, deploy, satisfaction_of
from .radio import RadioParams
from .scenario import GroundUser, ScenarioSpec, generate

__all__ = [
    "ExperimentConfig",
    "SweepCell",
    "SweepResult",
    "SweepTrialError",
    "default_config",
    "config_from_dict",
    "config_to_dict",
    "load_config",
    "run_sweep",
    "emit",
]

SWEEP_PARAMS = ("d_tolerable", "n_users", "c_min")
_IMPLEMENTED_METHODS = ("iad", "kmeanspp")
# comparison methods from other papers; named in the schema, not implemented
_RESERVED_METHODS = ("ddp", "spiral")


class SweepTrialError(RuntimeError):
    """A single trial failed; carries the (seed, sweep value, method) triple."""


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything one sweep run needs, resolvable from a JSON config file."""

    channel: ChannelParams
    l_allow_db: float
    h_max_m: float
    radio: RadioParams
    iad: IadParams
    scenario: ScenarioSpec
    methods: tuple[str, ...]
    sweep_param: str
    sweep_values: tuple[float, ...]
    trials: int
    base_seed: int
    output_dir: str

    def __post_init__(self) -> None:
        if not self.methods:
            raise ValueError("need at least one method")
        for m in self.methods:
            if m in _RESERVED_METHODS:
                raise ValueError(f"method {m!r} is reserved for comparison but not implemented")
            if m not in _IMPLEMENTED_METHODS:
                raise ValueError(f"unknown method {m!r}; choose from {_IMPLEMENTED_METHODS}")
        if len(set(self.methods)) != len(self.methods):
            raise ValueError("duplicate method names")
        if self.sweep_param not in SWEEP_PARAMS:
            raise ValueError(f"unknown sweep parameter {self.sweep_param!r}; choose from {SWEEP_PARAMS}")
        if not self.sweep_values:
            raise ValueError("sweep value list must be non-empty")
        if self.trials < 1:
            raise ValueError("need at least one trial")
        if self.l_allow_db <= 0 or self.h_max_m <= 0:
            raise ValueError("loss budget and maximum altitude must be positive")
        if self.sweep_param == "c_min":
            for v in self.sweep_values:
                if v not in self.radio.rate_levels_bps:
                    raise ValueError(f"c_min sweep value {v} not an admissible rate level")
        elif self.sweep_param == "n_users":
            for v in self.sweep_values:
                if int(v) != v or v < 1:
                    raise ValueError(f"n_users sweep value {v} must be a positive integer")
        else:
            for v in self.sweep_values:
                if v < 0:
                    raise ValueError(f"d_tolerable sweep value {v} must be non-negative")


@dataclass(frozen=True)
class SweepCell:
    """All trials of one method at one sweep value."""

    sweep_value: float
    method: str
    satisfactions: tuple[float, ...]
    runtimes_ms: tuple[float, ...]

    @property
    def mean_s(self) -> float:
        return sum(self.satisfactions) / len(self.satisfactions)

    @property
    def std_s(self) -> float:
        mu = self.mean_s
        return (sum((s - mu) ** 2 for s in self.satisfactions) / len(self.satisfactions)) ** 0.5

    @property
    def mean_runtime_ms(self) -> float:
        return sum(self.runtimes_ms) / len(self.runtimes_ms)

    def to_json_dict(self) -> dict:
        # runtimes are intentionally left out: results.json must be identical
        # across reruns of the same config and seed
        return {
            "sweep_value": self.sweep_value,
            "method": self.method,
            "mean_s": self.mean_s,
            "std_s": self.std_s,
            "satisfactions": list(self.satisfactions),
        }


@dataclass(frozen=True)
class SweepResult:
    sweep_param: str
    cells: tuple[SweepCell, ...]

    def cell(self, sweep_value: float, method: str) -> SweepCell:
        for c in self.cells:
            if c.sweep_value == sweep_value and c.method == method:
                return c
        raise KeyError(f"no cell for ({sweep_value}, {method})")

    def to_json_dict(self) -> dict:
        return {
            "format_version": 1,
            "sweep_param": self.sweep_param,
            "cells": [c.to_json_dict() for c in self.cells],
        }


def default_config() -> ExperimentConfig:
    """Dense-urban defaults: 600 users on 600x600 m, 25 UAVs, filter-depth sweep."""
    return ExperimentConfig(
        channel=DENSE_URBAN,
        l_allow_db=119.0,
        h_max_m=120.0,
        radio=RadioParams(),
        iad=IadParams(),
        scenario=ScenarioSpec(),
        methods=("iad", "kmeanspp"),
        sweep_param="d_tolerable",
        sweep_values=tuple(float(v) for v in range(0, 101, 10)),
        trials=100,
        base_seed=0,
        output_dir="results",
    )


def _section(data: dict, key: str, cls, defaults: dict | None = None):
    raw = data.get(key, {})
    if not isinstance(raw, dict):
        raise ValueError(f"config section {key!r} must be an object")
    fields = cls.__dataclass_fields__
    unknown = set(raw) - set(fields)
    if unknown:
        raise ValueError(f"unknown keys in config section {key!r}: {sorted(unknown)}")
    merged = dict(defaults or {})
    merged.update(raw)
    kwargs = {}
    for name, value in merged.items():
        if isinstance(value, list):
            value = tuple(value)
        kwargs[name] = value
    return cls(**kwargs)


def config_from_dict(data: dict) -> ExperimentConfig:
    """Build a validated config from parsed JSON; omitted sections take defaults."""
    if not isinstance(data, dict):
        raise ValueError("config root must be an object")
    known = {
        "channel", "link_budget", "radio", "iad", "scenario",
        "methods", "sweep", "trials", "base_seed", "output_dir",
    }
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown top-level config keys: {sorted(unknown)}")

    channel = _section(data, "channel", ChannelParams, {
        "a": DENSE_URBAN.a,
        "b": DENSE_URBAN.b,
        "eta_los_db": DENSE_URBAN.eta_los_db,
        "eta_nlos_db": DENSE_URBAN.eta_nlos_db,
    })
    budget = data.get("link_budget", {})
    if not isinstance(budget, dict) or set(budget) - {"l_allow_db", "h_max_m"}:
        raise ValueError("link_budget must be an object with keys l_allow_db, h_max_m")
    l_allow_db = float(budget.get("l_allow_db", 119.0))
    h_max_m = float(budget.get("h_max_m", 120.0))
    radio = _section(data, "radio", RadioParams)
    iad = _section(data, "iad", IadParams, {
        "c_max_bps": radio.backhaul_capacity_bps,
        "c_min_bps": radio.min_rate_bps,
    })
    scenario = _section(data, "scenario", ScenarioSpec)

    methods = data.get("methods", ["iad", "kmeanspp"])
    if not isinstance(methods, list) or not all(isinstance(m, str) for m in methods):
        raise ValueError("methods must be a list of method names")

    sweep = data.get("sweep", {"d_tolerable": [float(v) for v in range(0, 101, 10)]})
    if not isinstance(sweep, dict) or len(sweep) != 1:
        raise ValueError(f"sweep must be an object with exactly one of {SWEEP_PARAMS}")
    (sweep_param, values), = sweep.items()
    if not isinstance(values, list):
        raise ValueError("sweep values must be a list")

    return ExperimentConfig(
        channel=channel,
        l_allow_db=l_allow_db,
        h_max_m=h_max_m,
        radio=radio,
        iad=iad,
        scenario=scenario,
        methods=tuple(methods),
        sweep_param=str(sweep_param),
        sweep_values=tuple(float(v) for v in values),
        trials=int(data.get("trials", 100)),
        base_seed=int(data.get("base_seed", 0)),
        output_dir=str(data.get("output_dir", "results")),
    )


def config_to_dict(config: ExperimentConfig) -> dict:
    """Inverse of config_from_dict, suitable for json.dump."""
    c, r, i, s = config.channel, config.radio, config.iad, config.scenario
    sweep_values: list = [
        int(v) if config.sweep_param == "n_users" else v for v in config.sweep_values
    ]
    return {
        "channel": {
            "a": c.a,
            "b": c.b,
            "eta_los_db": c.eta_los_db,
            "eta_nlos_db": c.eta_nlos_db,
            "carrier_freq_hz": c.carrier_freq_hz,
            "speed_of_light_mps": c.speed_of_light_mps,
        },
        "link_budget": {"l_allow_db": config.l_allow_db, "h_max_m": config.h_max_m},
        "radio": {
            "tx_power_dbm": r.tx_power_dbm,
            "total_bandwidth_hz": r.total_bandwidth_hz,
            "noise_psd_dbm_hz": r.noise_psd_dbm_hz,
            "sinr_threshold_db": r.sinr_threshold_db,
            "backhaul_capacity_bps": r.backhaul_capacity_bps,
            "min_rate_bps": r.min_rate_bps,
            "rate_levels_bps": list(r.rate_levels_bps),
        },
        "iad": {
            "k": i.k,
            "n_min": i.n_min,
            "c_max_bps": i.c_max_bps,
            "c_min_bps": i.c_min_bps,
            "d_tolerable_m": i.d_tolerable_m,
            "m": i.m,
        },
        "scenario": {
            "width_m": s.width_m,
            "height_m": s.height_m,
            "n_users": s.n_users,
            "hotspot_count_range": list(s.hotspot_count_range),
            "hotspot_sigma_range_m": list(s.hotspot_sigma_range_m),
            "background_fraction": s.background_fraction,
            "seed": s.seed,
        },
        "methods": list(config.methods),
        "sweep": {config.sweep_param: sweep_values},
        "trials": config.trials,
        "base_seed": config.base_seed,
        "output_dir": config.output_dir,
    }


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValueError(
            f"malformed config {path}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return config_from_dict(data)


def _apply_sweep_value(
    config: ExperimentConfig, value: float
) -> tuple[RadioParams, IadParams, ScenarioSpec]:
    radio, iad, scenario = config.radio, config.iad, config.scenario
    if config.sweep_param == "d_tolerable":
        iad = replace(iad, d_tolerable_m=float(value))
    elif config.sweep_param == "n_users":
        scenario = replace(scenario, n_users=int(value))
    else:
        radio = replace(radio, min_rate_bps=float(value))
        iad = replace(iad, c_min_bps=float(value))
    return radio, iad, scenario


def _run_iad(
    gus: Sequence[GroundUser],
    profile: CoverageProfile,
    radio: RadioParams,
    iad: IadParams,
    seed: int,
) -> tuple[Deployment, float]:
    t0 = time.perf_counter()
    dep = deploy(gus, profile, iad, seed=seed)
    return dep, (time.perf_counter() - t0) * 1e3


def _run_kmeanspp(
    gus: Sequence[GroundUser],
    profile: CoverageProfile,
    radio: RadioParams,
    iad: IadParams,
    seed: int,
) -> tuple[Deployment, float]:
    params = KmeansParams(k=iad.k, seed=seed)
    t0 = time.perf_counter()
    dep = kmeanspp_deploy(gus, profile, radio, params)
    return dep, (time.perf_counter() - t0) * 1e3


_RUNNERS: dict[str, Callable[..., tuple[Deployment, float]]] = {
    "iad": _run_iad,
    "kmeanspp": _run_kmeanspp,
}


def run_sweep(config: ExperimentConfig) -> SweepResult:
    """Run every (sweep value, method, trial) combination and aggregate.

    Trial t always uses scenario seed base_seed + t, for every method and every
    sweep value, so per-trial comparisons are paired. Fully deterministic.
    """
    profile = optimal_elevation_angle(config.l_allow_db, config.h_max_m, config.channel)
    cells: list[SweepCell] = []
    for value in config.sweep_values:
        radio, iad, scenario = _apply_sweep_value(config, value)
        per_method: dict[str, tuple[list[float], list[float]]] = {
            m: ([], []) for m in config.methods
        }
        for t in range(config.trials):
            seed = config.base_seed + t
            gus = generate(replace(scenario, seed=seed))
            for method in config.methods:
                try:
                    dep, ms = _RUNNERS[method](gus, profile, radio, iad, seed)
                    s = satisfaction_of(dep, gus, config.channel, radio)
                except Exception as exc:
                    raise SweepTrialError(
                        f"trial failed: seed={seed}, {config.sweep_param}={value}, "
                        f"method={method}: {exc}"
                    ) from exc
                per_method[method][0].append(s)
                per_method[method][1].append(ms)
        for method in config.methods:
            sats, times = per_method[method]
            cells.append(
                SweepCell(
                    sweep_value=value,
                    method=method,
                    satisfactions=tuple(sats),
                    runtimes_ms=tuple(times),
                )
            )
    cells.sort(key=lambda c: (c.sweep_value, c.method))
    return SweepResult(sweep_param=config.sweep_param, cells=tuple(cells))


def _write_atomic(path: str, text: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def emit(result: SweepResult, output_dir: str) -> tuple[str, str]:
    """Write results.json and sweep_<param>.csv; returns the two paths."""
    os.makedirs(output_dir, exist_ok=True)
    json_path = os.path.join(output_dir, "results.json")
    csv_path = os.path.join(output_dir, f"sweep_{result.sweep_param}.csv")

    _write_atomic(json_path, json.dumps(result.to_json_dict(), indent=2) + "\n")

    lines = ["sweep_value,method,mean_S,std_S,mean_runtime_ms"]
    for c in result.cells:
        lines.append(
            f"{c.sweep_value!r},{c.method},{c.mean_s!r},{c.std_s!r},{c.mean_runtime_ms!r}"
        )
    _write_atomic(csv_path, "\n".join(lines) + "\n")
    return json_path, csv_path
