"""Comparison of policies and seed sweeps of the Q-learning controller."""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

import numpy as np

from farmgrid.data_structures.reports import (ComparisonReport, METRICS,
                                              MONTHLY_METRICS, SweepReport,
                                              reduction_pct)
from farmgrid.dispatch.baselines import BASELINES
from farmgrid.exceptions import ComparisonError, ConfigError
from farmgrid.harness.runner import (library_versions, load_run,
                                     run_aggregates, run_simulation)


logger = logging.getLogger(__name__)


def _monthly_range(values, baseline_values):
    if not values or len(values) != len(baseline_values):
        return None
    reductions = [
        reduction_pct(value, baseline_value)
        for value, baseline_value in zip(values, baseline_values)
        if baseline_value > 0
    ]
    if not reductions:
        return None
    return min(reductions), max(reductions)


def compare(aggregates, baseline, provenance=None):
    """Compare policies against a baseline.

    Parameters
    ----------
    aggregates : iterable of PolicyAggregates or dict
        Aggregates of at least two distinct policies
    baseline : str
        Name of the reference policy
    provenance : dict, optional

    Returns
    -------
    ComparisonReport

    Raises
    ------
    ComparisonError
        If fewer than two policies are given, the baseline is missing or a
        baseline total is zero
    """
    if isinstance(aggregates, dict):
        aggregates = list(aggregates.values())
    policies = dict()
    for a in aggregates:
        if a.policy in policies:
            raise ComparisonError(
                "Policy '{}' is given more than once".format(a.policy))
        policies[a.policy] = a
    if len(policies) < 2:
        raise ComparisonError(
            "A comparison needs at least two policies, got {}".format(
                sorted(policies)))
    if baseline not in policies:
        raise ComparisonError(
            "Baseline '{}' is not among the compared policies {}".format(
                baseline, sorted(policies)))

    base = policies[baseline]
    pairwise = dict()
    for name, a in policies.items():
        if name == baseline:
            continue
        entry = dict()
        for metric, attr in METRICS.items():
            entry[metric] = reduction_pct(getattr(a, attr), getattr(base, attr))
        for metric, attr in MONTHLY_METRICS.items():
            bounds = _monthly_range(getattr(a, attr), getattr(base, attr))
            if bounds is not None:
                entry["monthly_{}_min".format(metric)] = bounds[0]
                entry["monthly_{}_max".format(metric)] = bounds[1]
        pairwise[ComparisonReport.pair_key(name, baseline)] = entry

    report = ComparisonReport(baseline, policies, pairwise, provenance)
    report.check_consistency()
    return report


def compare_runs(run_dirs, baseline):
    """Compare the runs stored in several run directories."""
    reports = [load_run(run_dir)[0] for run_dir in run_dirs]
    provenance = {
        "runs": {
            report["policy"]: {
                "config_hash": report["provenance"]["config_hash"],
                "rng_seed": report["provenance"]["rng_seed"],
                "trace_sha256": report["provenance"]["trace_sha256"]
            }
            for report in reports
        },
        "versions": library_versions()
    }
    return compare(
        [run_aggregates(report) for report in reports], baseline, provenance)


def _qlearn_aggregates(config):
    return run_simulation(config, write=False).aggregates


def sweep(config, seeds, baseline="tou", max_workers=None):
    """Train and evaluate the Q-learning controller over several seeds.

    The rule-based policies are rolled out once; one table is trained per
    seed in a process pool.

    Parameters
    ----------
    config : RunConfig
    seeds : iterable of int
    baseline : str
        Rule-based policy the reductions are computed against
    max_workers : int, optional
        Size of the process pool, 1 runs the seeds in this process

    Returns
    -------
    SweepReport
        `summary` maps every pair to {metric: {"min", "max", "mean"}}
    """
    seeds = list(seeds)
    if not seeds:
        raise ConfigError("A sweep needs at least one seed")
    if len(set(seeds)) != len(seeds):
        raise ConfigError("Sweep seeds must be distinct, got {}".format(seeds))
    if baseline not in BASELINES:
        raise ConfigError(
            "Sweep baseline must be one of {}, got '{}'".format(
                BASELINES, baseline))

    rule_based = [name for name in ["msc", "tou"] if name != baseline]
    rule_based.append(baseline)
    base_config = replace(config, output_dir=None, qtable_csv=None)
    fixed = [
        run_simulation(replace(base_config, policy=name), write=False).aggregates
        for name in rule_based
    ]

    seed_configs = [
        replace(base_config, policy="qlearn", rng_seed=seed) for seed in seeds
    ]
    logger.info("Sweeping %d seeds", len(seeds))
    if max_workers == 1 or len(seeds) == 1:
        learned = [_qlearn_aggregates(c) for c in seed_configs]
    else:
        with ProcessPoolExecutor(max_workers=max_workers) as executor:
            learned = list(executor.map(_qlearn_aggregates, seed_configs))

    per_seed = dict()
    for seed, aggregates in zip(seeds, learned):
        per_seed[seed] = compare([aggregates] + fixed, baseline).pairwise

    summary = dict()
    for pair in per_seed[seeds[0]]:
        summary[pair] = dict()
        for metric in METRICS:
            values = np.array([per_seed[seed][pair][metric] for seed in seeds])
            summary[pair][metric] = {
                "min": float(values.min()),
                "max": float(values.max()),
                "mean": float(values.mean())
            }

    provenance = {
        "config_hash": base_config.config_hash(),
        "versions": library_versions()
    }
    return SweepReport(baseline, seeds, per_seed, summary, provenance)
