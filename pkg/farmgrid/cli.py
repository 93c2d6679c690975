"""Command line interface of FarmGrid.

Every subcommand returns 0 on success. On failure it prints one JSON line
`{"error": "<ExceptionClass>", "message": "..."}` to stderr and returns 1.
"""
import argparse
import json
import logging
import sys

from farmgrid.exceptions import FarmGridException, PlotDataError
from farmgrid.exporters.plot_data import (PLOT_KINDS, export_plot_data,
                                          parse_window)
from farmgrid.exporters.reports import (format_aggregates_table,
                                        format_comparison_table,
                                        format_sweep_table, write_json)
from farmgrid.exporters.traces import write_trace_csv
from farmgrid.generators.synthetic import synth_trace
from farmgrid.harness.comparison import compare_runs, sweep
from farmgrid.harness.config import load_config
from farmgrid.harness.runner import load_run, run_simulation
from farmgrid.importers.tariffs import load_tariff_json
from farmgrid.importers.traces import load_trace_csv
from farmgrid.learning.oracle import solve_optimal
from farmgrid.resources import defaults


logger = logging.getLogger(__name__)


def _qlearning_overrides(config, **params):
    qlearning = dict(config.qlearning)
    qlearning.update(
        {key: value for key, value in params.items() if value is not None})
    return qlearning


def synth_data(args):
    trace = synth_trace(
        n_cows=args.cows, annual_load_kwh=args.annual_kwh,
        pv_peak_kw=args.pv_peak_kw, seed=args.seed)
    write_trace_csv(trace, args.out)
    logger.info("Synthetic trace written to '%s'", args.out)


def simulate(args):
    config = load_config(args.config)
    config = config.with_overrides(
        policy=args.policy, trace_csv=args.trace, tariff_json=args.tariff,
        qtable_csv=args.qtable, rng_seed=args.seed, output_dir=args.out,
        qlearning=_qlearning_overrides(config, episodes=args.episodes))
    result = run_simulation(config, progress=args.progress)
    print(format_aggregates_table([result.aggregates]))


def train(args):
    config = load_config(args.config)
    config = config.with_overrides(
        policy="qlearn", trace_csv=args.trace, tariff_json=args.tariff,
        rng_seed=args.seed, output_dir=args.out,
        qlearning=_qlearning_overrides(
            config, episodes=args.episodes, alpha=args.alpha,
            gamma=args.gamma, epsilon_start=args.epsilon_start,
            epsilon_end=args.epsilon_end))
    result = run_simulation(
        config, progress=args.progress, log_every=args.log_every)
    print(format_aggregates_table([result.aggregates]))


def compare(args):
    report = compare_runs(args.runs, args.baseline)
    if args.out is not None:
        write_json(report.to_json(), args.out)
    print(format_comparison_table(report))


def plot_data(args):
    series = dict()
    for run_dir in args.runs:
        report, frame = load_run(run_dir)
        if report["policy"] in series:
            raise PlotDataError(
                "Policy '{}' appears in more than one run".format(
                    report["policy"]))
        series[report["policy"]] = frame
    export_plot_data(series, args.kind, parse_window(args.window), args.out)
    logger.info("Plot data written to '%s'", args.out)


def sweep_seeds(args):
    config = load_config(args.config)
    seeds = range(args.first_seed, args.first_seed + args.seeds)
    report = sweep(config, seeds, args.baseline, args.workers)
    write_json(report.to_json(), args.out)
    print(format_sweep_table(report))


def oracle(args):
    config = load_config(args.config)
    trace = load_trace_csv(args.trace)
    if args.tariff is not None:
        tariff = load_tariff_json(args.tariff)
    else:
        tariff = config.build_tariff()
    solution = solve_optimal(
        trace, config.build_battery(), tariff, args.gamma,
        initial_soc_kwh=config.build_hyperparams().initial_soc_kwh,
        max_states=args.max_states)
    json_data = solution.to_json()
    json_data["gamma"] = args.gamma
    write_json(json_data, args.out)
    print("Optimal cost {:.4f} EUR over {} steps ({} states)".format(
        solution.cost_eur, trace.horizon_steps, solution.n_states))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="farmgrid",
        description="Battery dispatch of a dairy farm with PV")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0,
        help="Log at INFO (-v) or DEBUG (-vv) level")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth-data", help="Generate a synthetic farm year")
    p.add_argument("--cows", type=int, default=defaults.SYNTH["n_cows"])
    p.add_argument(
        "--annual-kwh", type=float, default=defaults.SYNTH["annual_load_kwh"])
    p.add_argument(
        "--pv-peak-kw", type=float, default=defaults.SYNTH["pv_peak_kw"])
    p.add_argument("--seed", type=int, default=defaults.SYNTH["seed"])
    p.add_argument("--out", required=True, help="Trace CSV to write")
    p.set_defaults(func=synth_data)

    p = sub.add_parser("simulate", help="Run one policy over a trace")
    p.add_argument("--policy", choices=defaults.POLICIES)
    p.add_argument("--trace", help="Trace CSV, synthetic year by default")
    p.add_argument("--tariff", help="Tariff JSON")
    p.add_argument("--config", help="Run config JSON")
    p.add_argument("--episodes", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--qtable", help="Evaluate a stored Q-table")
    p.add_argument("--progress", action="store_true")
    p.add_argument("--out", required=True, help="Run directory")
    p.set_defaults(func=simulate)

    p = sub.add_parser("train", help="Train and evaluate a Q-table")
    p.add_argument("--trace", help="Trace CSV, synthetic year by default")
    p.add_argument("--tariff", help="Tariff JSON")
    p.add_argument("--config", help="Run config JSON")
    p.add_argument("--episodes", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--epsilon-start", type=float)
    p.add_argument("--epsilon-end", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--log-every", type=int)
    p.add_argument("--progress", action="store_true")
    p.add_argument("--out", required=True, help="Run directory")
    p.set_defaults(func=train)

    p = sub.add_parser("compare", help="Compare run directories")
    p.add_argument("--runs", nargs="+", required=True)
    p.add_argument("--baseline", default=defaults.HEADLINE_BASELINE)
    p.add_argument("--out", help="Comparison JSON to write")
    p.set_defaults(func=compare)

    p = sub.add_parser("plot-data", help="Export long-format plot data")
    p.add_argument("--runs", nargs="+", required=True)
    p.add_argument("--kind", choices=sorted(PLOT_KINDS), required=True)
    p.add_argument("--window", required=True, help="Step range 'a..b'")
    p.add_argument("--out", required=True, help="CSV to write")
    p.set_defaults(func=plot_data)

    p = sub.add_parser("sweep", help="Train over several seeds")
    p.add_argument("--config", help="Run config JSON")
    p.add_argument("--seeds", type=int, default=10, help="Number of seeds")
    p.add_argument("--first-seed", type=int, default=0)
    p.add_argument("--baseline", default=defaults.HEADLINE_BASELINE)
    p.add_argument("--workers", type=int)
    p.add_argument("--out", required=True, help="Sweep JSON to write")
    p.set_defaults(func=sweep_seeds)

    p = sub.add_parser("oracle", help="Optimal schedule of a short trace")
    p.add_argument("--trace", required=True, help="Trace CSV")
    p.add_argument("--tariff", help="Tariff JSON")
    p.add_argument("--config", help="Run config JSON, for the battery")
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--max-states", type=int, default=200000)
    p.add_argument("--out", required=True, help="Solution JSON to write")
    p.set_defaults(func=oracle)
    return parser


def _log_level(verbosity):
    if verbosity >= 2:
        return logging.DEBUG
    if verbosity == 1:
        return logging.INFO
    return logging.WARNING


def main(argv=None):
    """Entry point of the `farmgrid` console script."""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=_log_level(args.verbose),
        format="%(asctime)s %(name)s %(levelname)s %(message)s")
    try:
        args.func(args)
    except (FarmGridException, OSError) as e:
        print(json.dumps({"error": type(e).__name__, "message": str(e)}),
              file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
