"""Figure-level acceptance checks, one printed verdict line per criterion.

These are the slow end-to-end runs: full Monte Carlo sweeps at their
published operating points plus the randomized property suites. Each test
prints its verdict and the measured numbers before asserting, so the log
shows every criterion's outcome even when one fails.
"""
import json
import math
import time
from dataclasses import replace

import numpy as np
import pytest
from scipy.stats import spearmanr

from uav_iad.channel import DENSE_URBAN, optimal_elevation_angle, radius_at_loss
from uav_iad.cli import main
from uav_iad.deploy import IadParams, UavPlacement, deploy
from uav_iad.harness import default_config, run_sweep
from uav_iad.radio import RadioParams, evaluate_deployment
from uav_iad.scenario import GroundUser, ScenarioSpec, generate

from oracles import brute_evaluate, circumcircle_barycentric

N_PROPERTY_CASES = 1000


def _verdict(number: int, name: str, ok: bool, detail: str) -> bool:
    state = "PASS" if ok else "FAIL"
    print(f"criterion {number} ({name}): {state} [{detail}]")
    return ok


@pytest.fixture(scope="module")
def dt_sweep():
    return run_sweep(replace(default_config(), methods=("iad",)))


@pytest.fixture(scope="module")
def n_sweep():
    cfg = replace(
        default_config(),
        sweep_param="n_users",
        sweep_values=tuple(float(v) for v in range(100, 801, 100)),
    )
    return run_sweep(cfg)


@pytest.fixture(scope="module")
def cmin_sweep():
    cfg = replace(
        default_config(),
        sweep_param="c_min",
        sweep_values=(1e6, 2e6, 3e6, 4e6, 5e6, 6e6),
    )
    return run_sweep(cfg)


def test_criterion_1_link_budget():
    t0 = time.perf_counter()
    profile = optimal_elevation_angle(119.0, 120.0, DENSE_URBAN)
    elapsed = time.perf_counter() - t0
    ok = (
        abs(profile.theta_opt_deg - 54.69) <= 1.0
        and abs(profile.r_max_m - 85.0) <= 2.0
        and elapsed < 1.0
    )
    assert _verdict(
        1,
        "link budget",
        ok,
        f"theta={profile.theta_opt_deg:.3f} deg, r_max={profile.r_max_m:.2f} m, "
        f"runtime={elapsed * 1e3:.0f} ms",
    )


def test_criterion_2_filter_depth_trend(dt_sweep):
    values = [v for v in sorted({c.sweep_value for c in dt_sweep.cells}) if v <= 60.0]
    curve = [dt_sweep.cell(v, "iad").mean_s for v in values]
    rho = spearmanr(values, curve).statistic
    s60 = dt_sweep.cell(60.0, "iad").mean_s
    ok = rho > 0.8 and 0.70 <= s60 <= 0.90
    assert _verdict(
        2,
        "filter depth trend",
        ok,
        f"spearman={rho:+.3f} over {values}, S(60)={s60:.3f}, "
        f"curve={[round(s, 3) for s in curve]}",
    )


def test_criterion_3_user_count_ordering(n_sweep):
    diff_800 = n_sweep.cell(800.0, "iad").mean_s - n_sweep.cell(800.0, "kmeanspp").mean_s
    diff_100 = n_sweep.cell(100.0, "iad").mean_s - n_sweep.cell(100.0, "kmeanspp").mean_s
    sparse_note = (
        "kmeans++ ahead at N=100 (expected in sparse scenes)"
        if diff_100 < 0
        else "kmeans++ not ahead at N=100 (report only, not asserted)"
    )
    ok = diff_800 >= 0.10
    assert _verdict(
        3,
        "user count ordering",
        ok,
        f"paired IAD-kmeans++ gap at N=800 = {diff_800:+.3f} (need >= +0.10); "
        f"gap at N=100 = {diff_100:+.3f}, {sparse_note}",
    )


def test_criterion_4_rate_floor_robustness(cmin_sweep):
    values = (1e6, 2e6, 3e6, 4e6, 5e6, 6e6)
    iad = {v: cmin_sweep.cell(v, "iad").mean_s for v in values}
    km = {v: cmin_sweep.cell(v, "kmeanspp").mean_s for v in values}
    drop = abs(iad[6e6] - iad[1e6])
    worst_margin = min(iad[v] - km[v] for v in values)
    ok = drop <= 0.15 and worst_margin >= 0.0
    assert _verdict(
        4,
        "rate floor robustness",
        ok,
        f"drop |S(c6)-S(c1)|={drop:.3f} (need <= 0.15), "
        f"worst margin over c_min={worst_margin:+.3f} (need >= 0), "
        f"curves iad={[round(iad[v], 3) for v in values]} "
        f"km={[round(km[v], 3) for v in values]}",
    )


def _random_case(rng: np.random.Generator):
    spec = ScenarioSpec(
        width_m=float(rng.uniform(200.0, 400.0)),
        height_m=float(rng.uniform(200.0, 400.0)),
        n_users=int(rng.integers(12, 49)),
        hotspot_count_range=(2, 4),
        hotspot_sigma_range_m=(5.0, 20.0),
        background_fraction=0.2,
        seed=int(rng.integers(0, 2**31)),
    )
    c_min = 3e6
    params = IadParams(
        k=int(rng.integers(2, 7)),
        n_min=int(rng.integers(2, 5)),
        c_max_bps=c_min * int(rng.integers(5, 13)),
        c_min_bps=c_min,
        d_tolerable_m=float(rng.choice([0.0, 10.0, 20.0, 40.0, 60.0, 80.0])),
        m=int(rng.integers(1, 3)),
    )
    gus = generate(spec)
    dep = deploy(gus, dense_profile_cached(), params, seed=int(rng.integers(0, 2**31)))
    return gus, params, dep


_PROFILE_CACHE = {}


def dense_profile_cached():
    if "p" not in _PROFILE_CACHE:
        _PROFILE_CACHE["p"] = optimal_elevation_angle(119.0, 120.0, DENSE_URBAN)
    return _PROFILE_CACHE["p"]


def test_criterion_5_overlap_bound_suite():
    rng = np.random.default_rng(501)
    failures = 0
    placed = 0
    for _ in range(N_PROPERTY_CASES):
        gus, params, dep = _random_case(rng)
        placed += len(dep.placements)
        for i, a in enumerate(dep.placements):
            for b in dep.placements[i + 1 :]:
                d = math.hypot(a.x - b.x, a.y - b.y)
                depth = a.radius_m + b.radius_m - d
                if depth >= params.d_tolerable_m and depth > 0.0:
                    failures += 1
                if d <= a.radius_m or d <= b.radius_m:
                    failures += 1
    ok = failures == 0 and placed > 0
    assert _verdict(
        5,
        "overlap bound suite",
        ok,
        f"{N_PROPERTY_CASES} randomized deployments, {placed} discs, "
        f"{failures} violations of depth<d_tolerable / center-outside",
    )


def test_criterion_5_association_bounds_suite():
    rng = np.random.default_rng(502)
    profile = dense_profile_cached()
    failures = 0
    served_total = 0
    for _ in range(N_PROPERTY_CASES):
        gus, params, dep = _random_case(rng)
        n_max = math.floor(params.c_max_bps / params.c_min_bps)
        loads = [0] * len(dep.placements)
        for i, label in enumerate(dep.association):
            if label is None:
                continue
            if not (0 <= label < len(dep.placements)):
                failures += 1
                continue
            loads[label] += 1
            p = dep.placements[label]
            if math.hypot(gus[i].x - p.x, gus[i].y - p.y) > p.radius_m + 1e-9:
                failures += 1
        served_total += sum(loads)
        for load, p in zip(loads, dep.placements):
            if not (params.n_min <= load <= n_max):
                failures += 1
            if p.altitude_m > profile.h_max_m + 1e-9 or p.radius_m > profile.r_max_m + 1e-9:
                failures += 1
    ok = failures == 0 and served_total > 0
    assert _verdict(
        5,
        "association bounds suite",
        ok,
        f"{N_PROPERTY_CASES} randomized deployments, {served_total} associations, "
        f"{failures} violations of load/radius/altitude bounds",
    )


def test_criterion_5_oracle_equivalence_suite():
    rng = np.random.default_rng(503)
    radio = RadioParams()
    worst = 0.0
    checked = 0
    for _ in range(N_PROPERTY_CASES):
        n_uav = int(rng.integers(1, 6))
        n_gu = int(rng.integers(1, 31))
        placements = []
        for _ in range(n_uav):
            r = float(rng.uniform(5.0, 85.0))
            placements.append(
                UavPlacement(
                    x=float(rng.uniform(0.0, 300.0)),
                    y=float(rng.uniform(0.0, 300.0)),
                    altitude_m=min(r * math.tan(math.radians(54.6)), 120.0),
                    radius_m=r,
                )
            )
        points = rng.uniform(0.0, 300.0, size=(n_gu, 2))
        gus = [GroundUser(x=float(x), y=float(y)) for x, y in points]
        association = tuple(
            None if rng.uniform() < 0.2 else int(rng.integers(0, n_uav))
            for _ in range(n_gu)
        )
        report = evaluate_deployment(
            gus, tuple(placements), association, DENSE_URBAN, radio
        )
        per_gu, loads, sum_rates, satisfaction = brute_evaluate(
            [(g.x, g.y) for g in gus], placements, association, DENSE_URBAN, radio
        )
        for got, want in zip(report.per_gu, per_gu):
            if (got is None) != (want is None):
                worst = float("inf")
                continue
            if got is None:
                continue
            for g, w in (
                (got.sinr_linear, want[0]),
                (got.rate_bps, want[2]),
            ):
                scale = max(abs(g), abs(w), 1e-300)
                worst = max(worst, abs(g - w) / scale)
            checked += 1
        scale = max(abs(report.satisfaction), abs(satisfaction), 1e-300)
        worst = max(worst, abs(report.satisfaction - satisfaction) / scale)
    ok = worst <= 1e-9 and checked > 0
    assert _verdict(
        5,
        "oracle equivalence suite",
        ok,
        f"{N_PROPERTY_CASES} randomized instances, {checked} served links, "
        f"worst relative error={worst:.2e} (need <= 1e-9)",
    )


def test_criterion_5_channel_oracle_suite():
    rng = np.random.default_rng(504)
    solver_wins = 0
    n_channel = N_PROPERTY_CASES // 2
    for _ in range(n_channel):
        params = replace(
            DENSE_URBAN,
            a=float(rng.uniform(8.0, 15.0)),
            b=float(rng.uniform(0.1, 0.2)),
        )
        l_allow = float(rng.uniform(105.0, 125.0))
        h_max = float(rng.uniform(60.0, 200.0))
        profile = optimal_elevation_angle(l_allow, h_max, params)
        solver_r = radius_at_loss(profile.theta_opt_deg, l_allow, params)
        grid_best = max(
            radius_at_loss(float(theta), l_allow, params) for theta in range(1, 90)
        )
        if solver_r >= grid_best - 1e-6:
            solver_wins += 1
    circ_ok = 0
    for _ in range(N_PROPERTY_CASES):
        pts = rng.uniform(-100.0, 100.0, size=(3, 2))
        area = abs(
            (pts[1, 0] - pts[0, 0]) * (pts[2, 1] - pts[0, 1])
            - (pts[2, 0] - pts[0, 0]) * (pts[1, 1] - pts[0, 1])
        )
        scale = max(
            math.dist(pts[0], pts[1]),
            math.dist(pts[1], pts[2]),
            math.dist(pts[0], pts[2]),
        )
        # near-collinear slivers are not meaningful 1e-9 checks in float64
        if area <= 1e-5 * scale * scale:
            circ_ok += 1
            continue
        cx, cy, r = circumcircle_barycentric(pts[0], pts[1], pts[2])
        dists = [math.hypot(px - cx, py - cy) for px, py in pts]
        if max(abs(d - r) / r for d in dists) <= 1e-9:
            circ_ok += 1
    ok = solver_wins == n_channel and circ_ok == N_PROPERTY_CASES
    assert _verdict(
        5,
        "channel oracle suite",
        ok,
        f"solver >= 1-degree grid in {solver_wins}/{n_channel} budgets, "
        f"circumcircle equidistant to 1e-9 in {circ_ok}/{N_PROPERTY_CASES} triangles",
    )


def test_criterion_6_byte_identical_results(tmp_path):
    config = {
        "scenario": {"n_users": 60, "background_fraction": 0.1},
        "iad": {
            "k": 6,
            "n_min": 3,
            "c_max_bps": 3.6e7,
            "c_min_bps": 3e6,
            "d_tolerable_m": 40.0,
        },
        "sweep": {"d_tolerable": [0.0, 40.0]},
        "trials": 3,
        "base_seed": 11,
    }
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(config))
    blobs = []
    for run_dir in ("run_a", "run_b"):
        out = tmp_path / run_dir
        rc = main(
            ["sweep", "--config", str(config_path), "--output-dir", str(out)]
        )
        assert rc == 0
        blobs.append((out / "results.json").read_bytes())
    ok = blobs[0] == blobs[1] and len(blobs[0]) > 0
    assert _verdict(
        6,
        "determinism",
        ok,
        f"two sweep runs, results.json {len(blobs[0])} bytes, "
        f"{'identical' if ok else 'DIFFERENT'}",
    )


def test_criterion_7_deploy_scaling():
    profile = dense_profile_cached()
    params = IadParams()
    sizes = list(range(100, 801, 100))
    medians = []
    for n in sizes:
        times = []
        for seed in range(5):
            gus = generate(replace(ScenarioSpec(), n_users=n, seed=seed))
            t0 = time.perf_counter()
            deploy(gus, profile, params, seed=seed)
            times.append(time.perf_counter() - t0)
        medians.append(sorted(times)[len(times) // 2])
    exponent = float(np.polyfit(np.log(sizes), np.log(medians), 1)[0])
    ok = exponent < 1.5
    assert _verdict(
        7,
        "deploy scaling",
        ok,
        f"median wall-clock over N={sizes} fits exponent {exponent:.3f} "
        f"(need < 1.5); times_ms={[round(t * 1e3, 1) for t in medians]}",
    )
