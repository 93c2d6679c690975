"""Execution of single simulation runs.

A run directory holds

* `report.json` aggregates, config and provenance of the run;
* `hourly.csv` the per-step series;
* `qtable.csv` and `training_curve.csv` for the `qlearn` policy.
"""
import json
import logging
import numbers
import os
from dataclasses import dataclass

import numpy as np
import pandas as pd

from farmgrid.data_structures.reports import PolicyAggregates
from farmgrid.dispatch.baselines import rollout
from farmgrid.exceptions import ConfigError
from farmgrid.exporters.qtables import write_qtable_csv, write_training_curve
from farmgrid.exporters.reports import write_json
from farmgrid.exporters.traces import (SERIES_COLUMNS, outcomes_to_frame,
                                       read_series_csv, write_series_csv)
from farmgrid.harness.metrics import aggregate
from farmgrid.importers.qtables import load_qtable_csv
from farmgrid.learning.qlearning import evaluate_policy, train
from farmgrid.resources import defaults


logger = logging.getLogger(__name__)

REPORT_FILE = "report.json"
SERIES_FILE = "hourly.csv"
QTABLE_FILE = "qtable.csv"
CURVE_FILE = "training_curve.csv"


def library_versions():
    """Versions of the packages that determine the numbers of a run."""
    from farmgrid import __version__
    return {
        "farmgrid": __version__,
        "numpy": np.__version__,
        "pandas": pd.__version__
    }


@dataclass
class SimulationResult:
    """Outcome of `run_simulation`.

    Attributes
    ----------
    policy : str
    aggregates : PolicyAggregates
    outcomes : list of StepOutcome
    frame : pandas.DataFrame
        Per-step series, see `outcomes_to_frame`
    report : dict
        Content of the run's `report.json`
    q_table : QTable, optional
    training_curve : list of float, optional
    actions : list of Action, optional
    """

    policy: str
    aggregates: PolicyAggregates
    outcomes: list
    frame: pd.DataFrame
    report: dict
    q_table: object = None
    training_curve: list = None
    actions: list = None


def build_report(config, aggregates, trace, q_table=None):
    """Assemble the JSON report of a run."""
    report = {
        "policy": config.policy,
        "aggregates": aggregates.to_json(),
        "config": config.semantic_json(),
        "provenance": {
            "config_hash": config.config_hash(),
            "rng_seed": config.rng_seed,
            "trace_source": trace.source,
            "trace_sha256": trace.digest(),
            "synthetic": config.synthetic,
            "horizon_steps": trace.horizon_steps,
            "versions": library_versions()
        }
    }
    if q_table is not None:
        report["hyperparams"] = q_table.hyperparams.to_json()
    return report


def run_simulation(config, progress=False, write=True, log_every=None):
    """Run one policy over the trace of a config.

    Parameters
    ----------
    config : RunConfig
    progress : bool
        Show a progress bar while training
    write : bool
        Write the run artifacts to `config.output_dir` when it is set
    log_every : int, optional
        Log the training reward every `log_every` episodes

    Returns
    -------
    SimulationResult
    """
    logger.info(
        "Running policy '%s' (config %s)", config.policy,
        config.config_hash()[:12])
    trace = config.build_trace()
    spec = config.build_battery()
    tariff = config.build_tariff()
    hyperparams = config.build_hyperparams()

    q_table = None
    curve = None
    actions = None
    if config.policy == "qlearn":
        if config.qtable_csv is not None:
            q_table = load_qtable_csv(config.qtable_csv, hyperparams)
        else:
            q_table, curve = train(
                trace, spec, tariff, hyperparams, progress=progress,
                log_every=log_every)
        evaluation = evaluate_policy(
            q_table, trace, spec, tariff,
            initial_soc_kwh=hyperparams.initial_soc_kwh)
        outcomes = evaluation.outcomes
        actions = evaluation.actions
    else:
        outcomes = rollout(
            config.policy, trace, spec, tariff, config.build_windows(),
            hyperparams.initial_soc_kwh)

    aggregates = aggregate(config.policy, outcomes, trace)
    frame = outcomes_to_frame(outcomes, trace, actions)
    report = build_report(config, aggregates, trace, q_table)
    result = SimulationResult(
        config.policy, aggregates, outcomes, frame, report, q_table, curve,
        actions)
    if write and config.output_dir is not None:
        write_run(result, config.output_dir)
    logger.info(
        "Policy '%s': import %.3f kWh, cost %.3f EUR", config.policy,
        aggregates.annual_import_kwh, aggregates.annual_cost_eur)
    return result


def write_run(result, run_dir):
    """Write the artifacts of a run to a directory."""
    os.makedirs(run_dir, exist_ok=True)
    write_json(result.report, os.path.join(run_dir, REPORT_FILE))
    write_series_csv(result.frame, os.path.join(run_dir, SERIES_FILE))
    if result.q_table is not None:
        write_qtable_csv(result.q_table, os.path.join(run_dir, QTABLE_FILE))
    if result.training_curve is not None:
        write_training_curve(
            result.training_curve, os.path.join(run_dir, CURVE_FILE))
    logger.info("Run artifacts written to '%s'", run_dir)
    return run_dir


REPORT_KEYS = ("policy", "aggregates", "config", "provenance")
PROVENANCE_KEYS = ("config_hash", "rng_seed", "trace_sha256")


def _check_report(report, path):
    if not isinstance(report, dict):
        raise ConfigError(
            "Report '{}' must hold a JSON object".format(path))
    missing = [key for key in REPORT_KEYS if key not in report]
    if not missing and isinstance(report["provenance"], dict):
        missing = [
            "provenance." + key for key in PROVENANCE_KEYS
            if key not in report["provenance"]
        ]
    elif not missing:
        missing = ["provenance"]
    if missing:
        raise ConfigError(
            "Report '{}' lacks the keys {}".format(path, missing))
    if report["policy"] not in defaults.POLICIES:
        raise ConfigError(
            "Report '{}' names an unknown policy {!r}".format(
                path, report["policy"]))
    run_aggregates(report)


def load_run(run_dir):
    """Load the report and per-step series of a run directory.

    Returns
    -------
    report : dict
    frame : pandas.DataFrame
    """
    report_path = os.path.join(run_dir, REPORT_FILE)
    series_path = os.path.join(run_dir, SERIES_FILE)
    if not (os.path.isfile(report_path) and os.path.isfile(series_path)):
        raise ConfigError(
            "'{}' is not a run directory, expected {} and {}".format(
                run_dir, REPORT_FILE, SERIES_FILE))
    try:
        with open(report_path, "r", encoding="utf-8") as f:
            report = json.load(f)
    except ValueError as e:
        raise ConfigError("Cannot read report '{}': {}".format(report_path, e))
    _check_report(report, report_path)
    try:
        frame = read_series_csv(series_path)
    except (pd.errors.ParserError, pd.errors.EmptyDataError,
            ValueError) as e:
        raise ConfigError(
            "Cannot read series '{}': {}".format(series_path, e))
    missing = [c for c in SERIES_COLUMNS if c not in frame.columns]
    if missing:
        raise ConfigError(
            "Series '{}' lacks the columns {}".format(series_path, missing))
    return report, frame


def run_aggregates(report):
    """PolicyAggregates stored in a run report."""
    try:
        aggregates = PolicyAggregates.from_json(report["aggregates"])
    except (KeyError, TypeError) as e:
        raise ConfigError(
            "Invalid aggregates in the report of '{}': {}".format(
                report.get("policy"), e))
    for name in ["annual_import_kwh", "annual_cost_eur"]:
        value = getattr(aggregates, name)
        if isinstance(value, bool) or not isinstance(value, numbers.Real):
            raise ConfigError(
                "Aggregate '{}' of '{}' must be a number, got {!r}".format(
                    name, report.get("policy"), value))
    return aggregates
