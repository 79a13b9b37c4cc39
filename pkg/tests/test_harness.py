"""Sweep harness: config parsing, paired trials, and file emission."""
import json
import os
from dataclasses import replace

import pytest

from uav_iad.deploy import IadParams
from uav_iad.harness import (
    ExperimentConfig,
    SweepCell,
    SweepResult,
    SweepTrialError,
    _apply_sweep_value,
    config_from_dict,
    config_to_dict,
    default_config,
    emit,
    load_config,
    run_sweep,
)
from uav_iad.radio import RadioParams
from uav_iad.scenario import ScenarioSpec


def _small_config(**overrides):
    base = default_config()
    kwargs = dict(
        scenario=ScenarioSpec(
            n_users=40,
            hotspot_count_range=(3, 5),
            hotspot_sigma_range_m=(8.0, 20.0),
            background_fraction=0.1,
        ),
        iad=IadParams(k=6, n_min=3, c_max_bps=3.6e7, c_min_bps=3e6, d_tolerable_m=40.0),
        sweep_values=(0.0, 40.0),
        trials=3,
    )
    kwargs.update(overrides)
    return replace(base, **kwargs)


class TestExperimentConfig:
    def test_default_config_valid(self):
        cfg = default_config()
        assert cfg.methods == ("iad", "kmeanspp")
        assert cfg.sweep_param == "d_tolerable"
        assert len(cfg.sweep_values) == 11
        assert cfg.trials == 100

    @pytest.mark.parametrize(
        "overrides, match",
        [
            (dict(methods=()), "at least one method"),
            (dict(methods=("iad", "iad")), "duplicate"),
            (dict(methods=("voronoi",)), "unknown method"),
            (dict(sweep_param="power"), "unknown sweep parameter"),
            (dict(sweep_values=()), "non-empty"),
            (dict(trials=0), "at least one trial"),
            (dict(l_allow_db=0.0), "positive"),
            (dict(h_max_m=-5.0), "positive"),
        ],
    )
    def test_rejects_bad_fields(self, overrides, match):
        with pytest.raises(ValueError, match=match):
            replace(default_config(), **overrides)

    @pytest.mark.parametrize("method", ["ddp", "spiral"])
    def test_reserved_methods_named_but_rejected(self, method):
        with pytest.raises(ValueError, match="reserved for comparison"):
            replace(default_config(), methods=(method,))

    def test_c_min_values_must_be_rate_levels(self):
        with pytest.raises(ValueError, match="not an admissible rate level"):
            replace(default_config(), sweep_param="c_min", sweep_values=(2.5e6,))

    def test_n_users_values_must_be_integral(self):
        with pytest.raises(ValueError, match="positive integer"):
            replace(default_config(), sweep_param="n_users", sweep_values=(99.5,))

    def test_d_tolerable_values_must_be_non_negative(self):
        with pytest.raises(ValueError, match="non-negative"):
            replace(default_config(), sweep_values=(-1.0,))


class TestConfigDict:
    def test_empty_dict_gives_defaults(self):
        assert config_from_dict({}) == default_config()

    def test_round_trip(self):
        cfg = _small_config(
            sweep_param="n_users",
            sweep_values=(20.0, 30.0),
            base_seed=7,
            output_dir="out",
        )
        text = json.dumps(config_to_dict(cfg))
        assert config_from_dict(json.loads(text)) == cfg

    def test_iad_caps_default_from_radio(self):
        data = {"radio": {"backhaul_capacity_bps": 1.2e8, "min_rate_bps": 2e6}}
        cfg = config_from_dict(data)
        assert cfg.iad.c_max_bps == 1.2e8
        assert cfg.iad.c_min_bps == 2e6

    def test_explicit_iad_caps_win(self):
        data = {
            "radio": {"backhaul_capacity_bps": 1.2e8},
            "iad": {"c_max_bps": 9e7},
        }
        assert config_from_dict(data).iad.c_max_bps == 9e7

    @pytest.mark.parametrize(
        "data, match",
        [
            ([], "root must be an object"),
            ({"unknown_top": 1}, "unknown top-level"),
            ({"radio": {"tx_dbm": 20}}, "unknown keys in config section 'radio'"),
            ({"scenario": 5}, "must be an object"),
            ({"link_budget": {"loss": 100}}, "link_budget"),
            ({"methods": "iad"}, "list of method names"),
            ({"sweep": {}}, "exactly one"),
            ({"sweep": {"d_tolerable": [0], "c_min": [1e6]}}, "exactly one"),
            ({"sweep": {"d_tolerable": 60}}, "must be a list"),
        ],
    )
    def test_rejects_malformed(self, data, match):
        with pytest.raises(ValueError, match=match):
            config_from_dict(data)


class TestLoadConfig:
    def test_shipped_config_matches_defaults(self):
        path = os.path.join(os.path.dirname(__file__), "..", "configs", "dense_urban.json")
        assert load_config(path) == default_config()

    def test_reads_file(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps(config_to_dict(_small_config())))
        assert load_config(str(path)) == _small_config()

    def test_malformed_json_reports_position(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text('{\n "methods": [,]\n}')
        with pytest.raises(ValueError, match="line 2"):
            load_config(str(path))

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_config(str(tmp_path / "nope.json"))


class TestApplySweepValue:
    def test_d_tolerable_goes_to_iad(self):
        cfg = default_config()
        radio, iad, scenario = _apply_sweep_value(cfg, 30.0)
        assert iad.d_tolerable_m == 30.0
        assert radio == cfg.radio
        assert scenario == cfg.scenario

    def test_n_users_goes_to_scenario(self):
        cfg = replace(default_config(), sweep_param="n_users", sweep_values=(200.0,))
        _, _, scenario = _apply_sweep_value(cfg, 200.0)
        assert scenario.n_users == 200

    def test_c_min_goes_to_radio_and_iad(self):
        cfg = replace(default_config(), sweep_param="c_min", sweep_values=(2e6,))
        radio, iad, _ = _apply_sweep_value(cfg, 2e6)
        assert radio.min_rate_bps == 2e6
        assert iad.c_min_bps == 2e6


class TestRunSweep:
    def test_small_sweep_shape(self):
        res = run_sweep(_small_config())
        assert res.sweep_param == "d_tolerable"
        assert len(res.cells) == 4
        keys = [(c.sweep_value, c.method) for c in res.cells]
        assert keys == sorted(keys)
        for c in res.cells:
            assert len(c.satisfactions) == 3
            assert len(c.runtimes_ms) == 3
            assert all(0.0 <= s <= 1.0 for s in c.satisfactions)
            assert all(t >= 0.0 for t in c.runtimes_ms)

    def test_satisfactions_deterministic(self):
        a = run_sweep(_small_config())
        b = run_sweep(_small_config())
        for ca, cb in zip(a.cells, b.cells):
            assert ca.satisfactions == cb.satisfactions

    def test_cell_lookup(self):
        res = run_sweep(_small_config())
        assert res.cell(40.0, "iad").sweep_value == 40.0
        with pytest.raises(KeyError):
            res.cell(99.0, "iad")

    def test_trial_failure_wrapped(self):
        # kmeans++ needs at least k users, so a 10-user scenario must fail
        cfg = _small_config(
            scenario=ScenarioSpec(n_users=10),
            iad=IadParams(k=25, n_min=3),
            methods=("kmeanspp",),
            trials=1,
        )
        with pytest.raises(SweepTrialError, match=r"seed=0.*method=kmeanspp"):
            run_sweep(cfg)


class TestEmit:
    def _result(self):
        cells = (
            SweepCell(
                sweep_value=0.0,
                method="iad",
                satisfactions=(0.5, 0.75),
                runtimes_ms=(1.0, 3.0),
            ),
            SweepCell(
                sweep_value=0.0,
                method="kmeanspp",
                satisfactions=(0.25, 0.25),
                runtimes_ms=(2.0, 2.0),
            ),
        )
        return SweepResult(sweep_param="d_tolerable", cells=cells)

    def test_csv_exact_text(self, tmp_path):
        _, csv_path = emit(self._result(), str(tmp_path))
        assert csv_path.endswith("sweep_d_tolerable.csv")
        expected = (
            "sweep_value,method,mean_S,std_S,mean_runtime_ms\n"
            "0.0,iad,0.625,0.125,2.0\n"
            "0.0,kmeanspp,0.25,0.0,2.0\n"
        )
        with open(csv_path, "r", encoding="utf-8") as fh:
            assert fh.read() == expected

    def test_json_excludes_runtimes(self, tmp_path):
        json_path, _ = emit(self._result(), str(tmp_path))
        with open(json_path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        assert data["format_version"] == 1
        assert data["sweep_param"] == "d_tolerable"
        for cell in data["cells"]:
            assert set(cell) == {"sweep_value", "method", "mean_s", "std_s", "satisfactions"}
        assert data["cells"][0]["satisfactions"] == [0.5, 0.75]

    def test_no_temp_files_left(self, tmp_path):
        emit(self._result(), str(tmp_path))
        assert not [f for f in os.listdir(tmp_path) if f.endswith(".tmp")]

    def test_empty_result_writes_header_only(self, tmp_path):
        _, csv_path = emit(SweepResult(sweep_param="c_min", cells=()), str(tmp_path))
        with open(csv_path, "r", encoding="utf-8") as fh:
            assert fh.read() == "sweep_value,method,mean_S,std_S,mean_runtime_ms\n"

    def test_reruns_byte_identical(self, tmp_path):
        dir_a, dir_b = str(tmp_path / "a"), str(tmp_path / "b")
        json_a, _ = emit(self._result(), dir_a)
        json_b, _ = emit(self._result(), dir_b)
        with open(json_a, "rb") as fa, open(json_b, "rb") as fb:
            assert fa.read() == fb.read()
