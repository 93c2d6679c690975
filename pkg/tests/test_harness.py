"""Testing of run configs, simulations, comparisons and the CLI."""
import json
import warnings

import numpy as np
import pytest

from farmgrid.cli import main
from farmgrid.data_structures.reports import (ComparisonReport,
                                              PolicyAggregates)
from farmgrid.dispatch.baselines import rollout
from farmgrid.exceptions import (ComparisonError, ConfigError,
                                 FarmGridWarning, MetricsWarning,
                                 PlotDataError, TraceWarning)
from farmgrid.exporters.plot_data import export_plot_data, parse_window
from farmgrid.exporters.reports import format_comparison_table
from farmgrid.exporters.traces import outcomes_to_frame, write_trace_csv
from farmgrid.harness.comparison import compare, compare_runs, sweep
from farmgrid.harness.config import RunConfig, load_config
from farmgrid.harness.metrics import aggregate
from farmgrid.harness.runner import load_run, run_simulation

from tests.resources import (DEFAULT_SPEC, TARIFF, daily_trace, flat_trace,
                             synthetic_year)


def _aggregates(policy, import_kwh, cost_eur, monthly=None):
    return PolicyAggregates(
        policy=policy,
        annual_import_kwh=import_kwh,
        annual_export_kwh=0.0,
        annual_cost_eur=cost_eur,
        annual_load_kwh=20000.0,
        annual_pv_kwh=5000.0,
        grid_to_batt_kwh=0.0,
        peak_import_kwh=10.0,
        self_consumption_ratio=1.0,
        monthly_import_kwh=monthly or [],
        monthly_cost_eur=[])


def _write_trace(tmp_path, trace, name="trace.csv"):
    return str(write_trace_csv(trace, tmp_path / name))


def _two_day_trace():
    load = [20.0] * 8 + [10.0] * 8 + [30.0] * 8
    pv = [0.0] * 8 + [25.0] * 8 + [0.0] * 8
    return daily_trace(load, pv, days=2)


class TestRunConfig(object):
    """Test class for `RunConfig` and `load_config`."""

    def test_defaults(self):
        config = RunConfig()
        assert config.policy == "qlearn"
        assert config.synthetic
        assert config.build_hyperparams().rng_seed == 42
        assert config.build_battery() == DEFAULT_SPEC

    def test_invalid(self):
        with pytest.raises(ConfigError):
            RunConfig(policy="random")
        with pytest.raises(ConfigError):
            RunConfig(trace_csv="a.csv", synth={"n_cows": 100})
        with pytest.raises(ConfigError):
            RunConfig(qlearning={"rng_seed": 1})
        with pytest.raises(ConfigError):
            RunConfig.from_json({"policy": "msc", "horizon": 24})
        with pytest.raises(ConfigError):
            RunConfig(policy="msc", qtable_csv="q.csv")
        with pytest.raises(ConfigError):
            RunConfig(battery={"voltage": 400}).build_battery()
        with pytest.raises(ConfigError):
            RunConfig(qlearning={"alpha": 2.0}).build_hyperparams()

    def test_overrides(self):
        config = RunConfig(synth={"seed": 1})
        config = config.with_overrides(trace_csv="a.csv", rng_seed=None)
        assert config.trace_csv == "a.csv"
        assert config.synth is None
        assert config.rng_seed == 42

    def test_hash_ignores_output_dir(self):
        a = RunConfig(policy="tou", output_dir="a")
        b = RunConfig(policy="tou", output_dir="b")
        c = RunConfig(policy="msc", output_dir="a")
        assert a.config_hash() == b.config_hash()
        assert a.config_hash() != c.config_hash()
        assert RunConfig.from_json(a.to_json()) == a

    def test_load_config(self, tmp_path, monkeypatch):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"policy": "tou", "rng_seed": 3}))
        monkeypatch.delenv("FARMGRID_CONFIG", raising=False)
        assert load_config() == RunConfig()
        assert load_config(str(path)).policy == "tou"
        monkeypatch.setenv("FARMGRID_CONFIG", str(path))
        assert load_config().rng_seed == 3
        path.write_text("{")
        with pytest.raises(ConfigError):
            load_config(str(path))


class TestAggregate(object):
    """Test class for `aggregate`."""

    def test_full_year(self):
        trace = synthetic_year()
        outcomes = rollout("msc", trace, DEFAULT_SPEC, TARIFF)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            aggregates = aggregate("msc", outcomes, trace)
        assert not [
            w for w in caught if issubclass(w.category, FarmGridWarning)]
        assert len(aggregates.monthly_import_kwh) == 12
        assert sum(aggregates.monthly_import_kwh) == pytest.approx(
            aggregates.annual_import_kwh)
        assert sum(aggregates.monthly_cost_eur) == pytest.approx(
            aggregates.annual_cost_eur)
        assert 0.0 <= aggregates.self_consumption_ratio <= 1.0
        assert aggregates.annual_load_kwh == pytest.approx(261000.0)
        assert aggregates.peak_import_kwh ==\
            max(o.grid_import_kwh for o in outcomes)

    def test_without_pv(self):
        trace = flat_trace(2.0, 0.0, days=2)
        outcomes = rollout("idle", trace, DEFAULT_SPEC, TARIFF)
        with pytest.warns(MetricsWarning):
            aggregates = aggregate("idle", outcomes, trace)
        assert aggregates.self_consumption_ratio is None
        assert aggregates.annual_import_kwh == 96.0

    def test_partial_year_warns(self):
        trace = flat_trace(2.0, 1.0)
        outcomes = rollout("idle", trace, DEFAULT_SPEC, TARIFF)
        with pytest.warns(TraceWarning):
            aggregates = aggregate("idle", outcomes, trace)
        assert len(aggregates.monthly_import_kwh) == 1


class TestRunSimulation(object):
    """Test class for `run_simulation`."""

    def test_msc_with_pv_surplus(self, tmp_path):
        path = _write_trace(tmp_path, flat_trace(5.0, 8.0, days=2))
        result = run_simulation(
            RunConfig(policy="msc", trace_csv=path), write=False)
        assert result.aggregates.annual_import_kwh == 0.0
        assert result.report["provenance"]["synthetic"] is False

    def test_tou_without_pv(self, tmp_path):
        trace = flat_trace(12.0, 0.0, days=3)
        path = _write_trace(tmp_path, trace)
        result = run_simulation(
            RunConfig(policy="tou", trace_csv=path), write=False)
        flows = [o.flows for o in result.outcomes]
        charged = sum(f.grid_to_batt for f in flows)
        discharged = sum(f.batt_to_load for f in flows)
        assert charged > 0.0
        assert result.aggregates.annual_import_kwh == pytest.approx(
            np.sum(trace.load_kwh) + charged - discharged)
        for t, flow in enumerate(flows):
            if flow.grid_to_batt > 0:
                assert trace.hour_of_step(t) in [23, 0, 1, 2, 3, 4, 5, 6, 7]

    def test_identical_configs_identical_reports(self, tmp_path):
        path = _write_trace(tmp_path, _two_day_trace())
        reports = []
        tables = []
        for name in ["a", "b"]:
            config = RunConfig(
                policy="qlearn", trace_csv=path,
                qlearning={"episodes": 30, "n_bins": 4},
                output_dir=str(tmp_path / name))
            run_simulation(config)
            reports.append((tmp_path / name / "report.json").read_bytes())
            tables.append((tmp_path / name / "qtable.csv").read_bytes())
            assert (tmp_path / name / "training_curve.csv").exists()
            assert (tmp_path / name / "hourly.csv").exists()
        assert reports[0] == reports[1]
        assert tables[0] == tables[1]

    def test_stored_table(self, tmp_path):
        path = _write_trace(tmp_path, _two_day_trace())
        config = RunConfig(
            policy="qlearn", trace_csv=path,
            qlearning={"episodes": 30, "n_bins": 4},
            output_dir=str(tmp_path / "trained"))
        trained = run_simulation(config)
        reloaded = run_simulation(
            config.with_overrides(
                qtable_csv=str(tmp_path / "trained" / "qtable.csv"),
                output_dir=str(tmp_path / "reloaded")))
        assert reloaded.training_curve is None
        assert reloaded.aggregates == trained.aggregates

    def test_load_run(self, tmp_path):
        path = _write_trace(tmp_path, flat_trace(5.0, 2.0))
        run_simulation(
            RunConfig(policy="tou", trace_csv=path,
                      output_dir=str(tmp_path / "run")))
        report, frame = load_run(str(tmp_path / "run"))
        assert report["policy"] == "tou"
        assert len(frame) == 24
        assert list(frame["step"]) == list(range(24))
        with pytest.raises(ConfigError):
            load_run(str(tmp_path))

    def test_trace_content_in_provenance(self, tmp_path):
        path = _write_trace(tmp_path, flat_trace(5.0, 2.0))
        config = RunConfig(policy="msc", trace_csv=path)
        first = run_simulation(config, write=False).report["provenance"]
        _write_trace(tmp_path, flat_trace(5.0, 3.0))
        second = run_simulation(config, write=False).report["provenance"]
        assert first["config_hash"] == second["config_hash"]
        assert first["trace_sha256"] != second["trace_sha256"]
        assert second["trace_sha256"] == flat_trace(5.0, 3.0).digest()

    def test_load_run_rejects_malformed(self, tmp_path):
        path = _write_trace(tmp_path, flat_trace(5.0, 2.0))
        run_dir = tmp_path / "run"
        run_simulation(
            RunConfig(policy="msc", trace_csv=path, output_dir=str(run_dir)))
        report = json.loads((run_dir / "report.json").read_text())
        series = (run_dir / "hourly.csv").read_text()

        broken = dict(report, aggregates=dict(report["aggregates"]))
        del broken["aggregates"]["annual_cost_eur"]
        for bad in [{}, [], dict(report, policy="random"),
                    dict(report, provenance={"config_hash": "x"}), broken,
                    dict(report, aggregates=dict(
                        report["aggregates"], annual_import_kwh="many"))]:
            (run_dir / "report.json").write_text(json.dumps(bad))
            with pytest.raises(ConfigError):
                load_run(str(run_dir))

        (run_dir / "report.json").write_text(json.dumps(report))
        for bad in ["", "step,soc_kwh\n0,1.0\n", 'step,"soc\n1,2\n']:
            (run_dir / "hourly.csv").write_text(bad)
            with pytest.raises(ConfigError):
                load_run(str(run_dir))
        (run_dir / "hourly.csv").write_text(series)
        assert load_run(str(run_dir))[0] == report


class TestCompare(object):
    """Test class for `compare`."""

    def test_import_reduction(self):
        report = compare(
            [_aggregates("qlearn", 9000.0, 1800.0),
             _aggregates("tou", 10000.0, 2000.0)], "tou")
        entry = report.pairwise["qlearn_vs_tou"]
        assert entry["import_reduction_pct"] == pytest.approx(10.0)
        assert entry["cost_reduction_pct"] == pytest.approx(10.0)
        assert "qlearn vs tou" in format_comparison_table(report)

    def test_identical(self):
        report = compare(
            [_aggregates("msc", 5000.0, 700.0),
             _aggregates("tou", 5000.0, 700.0)], "tou")
        assert report.pairwise["msc_vs_tou"]["import_reduction_pct"] == 0.0
        assert report.pairwise["msc_vs_tou"]["cost_reduction_pct"] == 0.0

    def test_zero_denominator(self):
        with pytest.raises(ComparisonError):
            compare(
                [_aggregates("qlearn", 10.0, 1.0),
                 _aggregates("tou", 10.0, 0.0)], "tou")

    def test_preconditions(self):
        with pytest.raises(ComparisonError):
            compare([_aggregates("tou", 1.0, 1.0)], "tou")
        with pytest.raises(ComparisonError):
            compare(
                [_aggregates("msc", 1.0, 1.0),
                 _aggregates("qlearn", 1.0, 1.0)], "tou")
        with pytest.raises(ComparisonError):
            compare(
                [_aggregates("msc", 1.0, 1.0),
                 _aggregates("msc", 2.0, 1.0)], "msc")

    def test_monthly_range(self):
        report = compare(
            [_aggregates("qlearn", 190.0, 1.0, monthly=[90.0, 100.0]),
             _aggregates("tou", 200.0, 1.0, monthly=[100.0, 100.0])], "tou")
        entry = report.pairwise["qlearn_vs_tou"]
        assert entry["monthly_import_reduction_pct_min"] == 0.0
        assert entry["monthly_import_reduction_pct_max"] == pytest.approx(10.0)
        assert "monthly_cost_reduction_pct_min" not in entry

    def test_consistency_check(self):
        report = compare(
            [_aggregates("qlearn", 9000.0, 1800.0),
             _aggregates("tou", 10000.0, 2000.0)], "tou")
        restored = ComparisonReport.from_json(
            json.loads(json.dumps(report.to_json())))
        assert restored.check_consistency()
        restored.pairwise["qlearn_vs_tou"]["cost_reduction_pct"] = 12.0
        with pytest.raises(ComparisonError):
            restored.check_consistency()

    def test_compare_runs(self, tmp_path):
        path = _write_trace(tmp_path, _two_day_trace())
        dirs = []
        for policy in ["msc", "tou", "idle"]:
            dirs.append(str(tmp_path / policy))
            run_simulation(RunConfig(
                policy=policy, trace_csv=path, output_dir=dirs[-1]))
        report = compare_runs(dirs, "idle")
        assert sorted(report.pairwise) == ["msc_vs_idle", "tou_vs_idle"]
        assert report.pairwise["msc_vs_idle"]["import_reduction_pct"] > 0.0
        assert set(report.provenance["runs"]) == {"msc", "tou", "idle"}
        runs = report.provenance["runs"].values()
        digests = {run["trace_sha256"] for run in runs}
        assert len(digests) == 1


class TestPlotData(object):
    """Test class for `export_plot_data`."""

    def test_two_day_soc_trace(self, tmp_path):
        trace = synthetic_year()
        series = {
            policy: outcomes_to_frame(
                rollout(policy, trace, DEFAULT_SPEC, TARIFF), trace)
            for policy in ["tou", "msc"]
        }
        path = tmp_path / "soc.csv"
        data = export_plot_data(series, "soc_trace", parse_window("0..48"), path)
        assert len(data) == 96
        lines = path.read_text().splitlines()
        assert lines[0] == "step,policy,value"
        assert len(lines) == 97
        assert list(data["policy"].unique()) == ["tou", "msc"]

    def test_full_year(self):
        trace = synthetic_year()
        series = {
            policy: outcomes_to_frame(
                rollout(policy, trace, DEFAULT_SPEC, TARIFF), trace)
            for policy in ["msc", "tou", "idle"]
        }
        data = export_plot_data(series, "hourly_import", (0, 8760))
        assert len(data) == 26280
        power = export_plot_data(series, "battery_power", (0, 24))
        assert (power[power["policy"] == "idle"]["value"] == 0.0).all()

    def test_bad_windows(self):
        trace = flat_trace(1.0, 0.0)
        frame = outcomes_to_frame(
            rollout("idle", trace, DEFAULT_SPEC, TARIFF), trace)
        with pytest.raises(PlotDataError):
            export_plot_data({"idle": frame}, "soc_trace", (5, 5))
        with pytest.raises(PlotDataError):
            export_plot_data({"idle": frame}, "soc_trace", (0, 25))
        with pytest.raises(PlotDataError):
            export_plot_data({"idle": frame}, "voltage", (0, 24))
        with pytest.raises(PlotDataError):
            parse_window("0-48")


class TestSweep(object):
    """Test class for `sweep`."""

    def test_seed_summary(self, tmp_path):
        path = _write_trace(tmp_path, _two_day_trace())
        config = RunConfig(
            trace_csv=path, qlearning={"episodes": 40, "n_bins": 4})
        report = sweep(config, [1, 2, 3], baseline="tou", max_workers=1)
        assert sorted(report.summary) == ["msc_vs_tou", "qlearn_vs_tou"]
        for pair in report.summary.values():
            for stats in pair.values():
                assert stats["min"] - 1e-9 <= stats["mean"] <=\
                    stats["max"] + 1e-9
        msc = report.summary["msc_vs_tou"]["cost_reduction_pct"]
        assert msc["min"] == msc["max"]
        json_data = report.to_json()
        assert sorted(json_data["per_seed"]) == ["1", "2", "3"]

    def test_invalid(self):
        with pytest.raises(ConfigError):
            sweep(RunConfig(), [], max_workers=1)
        with pytest.raises(ConfigError):
            sweep(RunConfig(), [1], baseline="qlearn", max_workers=1)


class TestCli(object):
    """Test class for `farmgrid.cli.main`."""

    def setup_method(self):
        self.trace = _two_day_trace()

    def test_end_to_end(self, tmp_path, monkeypatch, capsys):
        monkeypatch.delenv("FARMGRID_CONFIG", raising=False)
        trace_path = _write_trace(tmp_path, self.trace)
        runs = []
        for policy in ["msc", "tou"]:
            runs.append(str(tmp_path / policy))
            assert main([
                "simulate", "--policy", policy, "--trace", trace_path,
                "--out", runs[-1]]) == 0
        runs.append(str(tmp_path / "qlearn"))
        assert main([
            "train", "--trace", trace_path, "--episodes", "20",
            "--alpha", "0.2", "--seed", "5", "--out", runs[-1]]) == 0
        report = json.loads((tmp_path / "qlearn" / "report.json").read_text())
        assert report["hyperparams"]["alpha"] == 0.2
        assert report["provenance"]["rng_seed"] == 5

        out = tmp_path / "comparison.json"
        assert main([
            "compare", "--runs"] + runs + ["--baseline", "tou",
                                          "--out", str(out)]) == 0
        comparison = json.loads(out.read_text())
        assert sorted(comparison["pairwise"]) == ["msc_vs_tou", "qlearn_vs_tou"]

        plot = tmp_path / "plot.csv"
        assert main([
            "plot-data", "--runs"] + runs + ["--kind", "soc_trace",
                                            "--window", "0..48",
                                            "--out", str(plot)]) == 0
        assert len(plot.read_text().splitlines()) == 3 * 48 + 1
        capsys.readouterr()

    def test_synth_data(self, tmp_path):
        out = tmp_path / "year.csv"
        assert main(["synth-data", "--seed", "7", "--out", str(out)]) == 0
        assert len(out.read_text().splitlines()) == 8761

    def test_oracle(self, tmp_path):
        trace_path = _write_trace(tmp_path, flat_trace(10.0, 0.0))
        out = tmp_path / "oracle.json"
        assert main([
            "oracle", "--trace", trace_path, "--gamma", "1.0",
            "--out", str(out)]) == 0
        solution = json.loads(out.read_text())
        assert len(solution["actions"]) == 24
        assert solution["gamma"] == 1.0

    def test_error_line(self, tmp_path, monkeypatch, capsys):
        monkeypatch.delenv("FARMGRID_CONFIG", raising=False)
        code = main([
            "simulate", "--policy", "msc",
            "--trace", str(tmp_path / "missing.csv"),
            "--out", str(tmp_path / "run")])
        assert code == 1
        error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert error["error"] == "TraceError"
        assert "missing.csv" in error["message"]

    def test_compare_malformed_runs(self, tmp_path, capsys):
        runs = []
        for name in ["a", "b"]:
            run_dir = tmp_path / name
            run_dir.mkdir()
            (run_dir / "report.json").write_text("{}")
            (run_dir / "hourly.csv").write_text("step\n0\n")
            runs.append(str(run_dir))
        code = main(["compare", "--runs"] + runs)
        assert code == 1
        captured = capsys.readouterr()
        assert "Traceback" not in captured.err
        error = json.loads(captured.err.strip().splitlines()[-1])
        assert error["error"] == "ConfigError"
        assert "report.json" in error["message"]
