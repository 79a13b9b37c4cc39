"""Command-line interface: a thin client over the core library.

In-process by default; with --server URL every subcommand talks to a running
service instance over HTTP instead and prints the same shapes.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from .baseline import KmeansParams, kmeanspp_deploy
from .channel import optimal_elevation_angle
from .deploy import Deployment, deploy
from .harness import (
    ExperimentConfig,
    SweepCell,
    SweepResult,
    default_config,
    emit,
    load_config,
    run_sweep,
)
from .radio import evaluate_deployment
from .scenario import generate, load_scenario, save_scenario


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    config = load_config(args.config) if args.config else default_config()
    if getattr(args, "trials", None) is not None:
        config = replace(config, trials=args.trials)
    if getattr(args, "base_seed", None) is not None:
        config = replace(config, base_seed=args.base_seed)
    if getattr(args, "output_dir", None) is not None:
        config = replace(config, output_dir=args.output_dir)
    if getattr(args, "methods", None) is not None:
        config = replace(config, methods=tuple(args.methods.split(",")))
    if getattr(args, "n_users", None) is not None:
        config = replace(config, scenario=replace(config.scenario, n_users=args.n_users))
    if getattr(args, "width", None) is not None:
        config = replace(config, scenario=replace(config.scenario, width_m=args.width))
    if getattr(args, "height", None) is not None:
        config = replace(config, scenario=replace(config.scenario, height_m=args.height))
    if getattr(args, "d_tolerable", None) is not None:
        config = replace(config, iad=replace(config.iad, d_tolerable_m=args.d_tolerable))
    if getattr(args, "k", None) is not None:
        config = replace(config, iad=replace(config.iad, k=args.k))
    return config


def _post(server: str, path: str, payload: dict) -> dict:
    import httpx

    resp = httpx.post(server.rstrip("/") + path, json=payload, timeout=None)
    if resp.status_code != 200:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        raise RuntimeError(f"server returned {resp.status_code}: {detail}")
    return resp.json()


def _channel_payload(config: ExperimentConfig) -> dict:
    c = config.channel
    return {
        "a": c.a,
        "b": c.b,
        "eta_los_db": c.eta_los_db,
        "eta_nlos_db": c.eta_nlos_db,
        "carrier_freq_hz": c.carrier_freq_hz,
        "speed_of_light_mps": c.speed_of_light_mps,
    }


def _radio_payload(config: ExperimentConfig) -> dict:
    r = config.radio
    return {
        "tx_power_dbm": r.tx_power_dbm,
        "total_bandwidth_hz": r.total_bandwidth_hz,
        "noise_psd_dbm_hz": r.noise_psd_dbm_hz,
        "sinr_threshold_db": r.sinr_threshold_db,
        "backhaul_capacity_bps": r.backhaul_capacity_bps,
        "min_rate_bps": r.min_rate_bps,
        "rate_levels_bps": list(r.rate_levels_bps),
    }


def _iad_payload(config: ExperimentConfig) -> dict:
    i = config.iad
    return {
        "k": i.k,
        "n_min": i.n_min,
        "c_max_bps": i.c_max_bps,
        "c_min_bps": i.c_min_bps,
        "d_tolerable_m": i.d_tolerable_m,
        "m": i.m,
        "max_seed_attempts": i.max_seed_attempts,
        "rho": i.rho,
    }


def _write_or_print(text: str, out: str | None) -> None:
    if out is None or out == "-":
        print(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _cmd_generate(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    spec = config.scenario
    if args.seed is not None:
        spec = replace(spec, seed=args.seed)
    if args.server:
        payload = {"spec": {
            "width_m": spec.width_m,
            "height_m": spec.height_m,
            "n_users": spec.n_users,
            "hotspot_count_range": list(spec.hotspot_count_range),
            "hotspot_sigma_range_m": list(spec.hotspot_sigma_range_m),
            "background_fraction": spec.background_fraction,
            "seed": spec.seed,
        }}
        body = _post(args.server, "/scenarios/generate", payload)
        _write_or_print(json.dumps(body, indent=2), args.out)
        return 0
    gus = generate(spec)
    save_scenario(args.out, spec, gus)
    print(f"wrote {len(gus)} users to {args.out}")
    return 0


def _cmd_deploy(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    _, gus = load_scenario(args.scenario)
    seed = args.seed if args.seed is not None else config.base_seed
    if args.server:
        payload = {
            "channel": _channel_payload(config),
            "l_allow_db": config.l_allow_db,
            "h_max_m": config.h_max_m,
            "radio": _radio_payload(config),
            "iad": _iad_payload(config),
            "method": args.method,
            "seed": seed,
            "points": [[g.x, g.y] for g in gus],
        }
        body = _post(args.server, "/deployments", payload)
        _write_or_print(json.dumps(body["deployment"], indent=2), args.out)
        return 0
    profile = optimal_elevation_angle(config.l_allow_db, config.h_max_m, config.channel)
    if args.method == "iad":
        dep = deploy(gus, profile, config.iad, seed=seed)
    else:
        dep = kmeanspp_deploy(gus, profile, config.radio, KmeansParams(k=config.iad.k, seed=seed))
    _write_or_print(json.dumps(dep.to_json_dict(), indent=2), args.out)
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    _, gus = load_scenario(args.scenario)
    with open(args.deployment, "r", encoding="utf-8") as fh:
        dep_data = json.load(fh)
    if args.server:
        payload = {
            "channel": _channel_payload(config),
            "radio": _radio_payload(config),
            "points": [[g.x, g.y] for g in gus],
            "deployment": dep_data,
            "n_min": args.n_min,
        }
        body = _post(args.server, "/evaluations", payload)
        _write_or_print(json.dumps(body, indent=2), args.out)
        return 0
    dep = Deployment.from_json_dict(dep_data)
    report = evaluate_deployment(
        gus, dep.placements, dep.association, config.channel, config.radio, n_min=args.n_min
    )
    _write_or_print(json.dumps(report.to_json_dict(), indent=2), args.out)
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    if args.server:
        from .harness import config_to_dict

        body = _post(args.server, "/sweeps", {"config": config_to_dict(config)})
        cells = tuple(
            SweepCell(
                sweep_value=c["sweep_value"],
                method=c["method"],
                satisfactions=tuple(c["satisfactions"]),
                runtimes_ms=(c["mean_runtime_ms"],),
            )
            for c in body["cells"]
        )
        result = SweepResult(sweep_param=body["sweep_param"], cells=cells)
    else:
        result = run_sweep(config)
    json_path, csv_path = emit(result, config.output_dir)
    for cell in result.cells:
        print(
            f"{result.sweep_param}={cell.sweep_value:g} {cell.method}: "
            f"mean_S={cell.mean_s:.4f} std_S={cell.std_s:.4f}"
        )
    print(f"wrote {json_path} and {csv_path}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uav-iad",
        description="UAV base-station placement and Monte Carlo evaluation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="experiment config JSON; flags override it")
        p.add_argument("--server", help="base URL of a running service, e.g. http://localhost:8000")

    p = sub.add_parser("generate", help="generate a ground-user scenario file")
    common(p)
    p.add_argument("--out", required=True, help="scenario file to write")
    p.add_argument("--seed", type=int, help="scenario RNG seed")
    p.add_argument("--n-users", type=int, dest="n_users", help="number of ground users")
    p.add_argument("--width", type=float, help="area width in meters")
    p.add_argument("--height", type=float, help="area height in meters")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("deploy", help="place UAVs over one scenario")
    common(p)
    p.add_argument("--scenario", required=True, help="scenario file")
    p.add_argument("--method", choices=["iad", "kmeanspp"], default="iad")
    p.add_argument("--seed", type=int, help="placement RNG seed")
    p.add_argument("--d-tolerable", type=float, dest="d_tolerable", help="filter depth in meters")
    p.add_argument("--k", type=int, help="maximum UAV count")
    p.add_argument("--out", help="deployment JSON path (default: stdout)")
    p.set_defaults(func=_cmd_deploy)

    p = sub.add_parser("evaluate", help="score a deployment against a scenario")
    common(p)
    p.add_argument("--scenario", required=True, help="scenario file")
    p.add_argument("--deployment", required=True, help="deployment JSON file")
    p.add_argument("--n-min", type=int, dest="n_min", help="flag UAV loads below this")
    p.add_argument("--out", help="report JSON path (default: stdout)")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("sweep", help="run the full Monte Carlo sweep")
    common(p)
    p.add_argument("--trials", type=int, help="trials per sweep value")
    p.add_argument("--base-seed", type=int, dest="base_seed", help="seed of trial 0")
    p.add_argument("--output-dir", dest="output_dir", help="directory for results.json and CSV")
    p.add_argument("--methods", help="comma-separated method names")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, RuntimeError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
