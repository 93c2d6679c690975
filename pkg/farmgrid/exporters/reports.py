"""Export of JSON reports and terminal tables."""
from farmgrid.utils.generic import canonical_json


def write_json(json_data, path):
    """Write JSON with a canonical key order."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(canonical_json(json_data))
    return path


def _fmt(value, spec):
    if value is None:
        return "n/a"
    return format(value, spec)


def format_aggregates_table(aggregates):
    """Format a list of PolicyAggregates as a text table."""
    header = "{:<10} {:>14} {:>14} {:>12} {:>10}".format(
        "policy", "import_kwh", "export_kwh", "cost_eur", "self_cons")
    lines = [header, "-" * len(header)]
    for a in aggregates:
        lines.append("{:<10} {:>14} {:>14} {:>12} {:>10}".format(
            a.policy,
            _fmt(a.annual_import_kwh, ".1f"),
            _fmt(a.annual_export_kwh, ".1f"),
            _fmt(a.annual_cost_eur, ".2f"),
            _fmt(a.self_consumption_ratio, ".3f")))
    return "\n".join(lines)


def format_comparison_table(report):
    """Format a ComparisonReport as a text table."""
    lines = [format_aggregates_table(list(report.policies.values())), ""]
    for key in sorted(report.pairwise):
        entry = report.pairwise[key]
        lines.append(
            "{}: import reduction {:.2f}%, cost reduction {:.2f}%".format(
                key.replace("_vs_", " vs "),
                entry["import_reduction_pct"],
                entry["cost_reduction_pct"]))
    return "\n".join(lines)


def format_sweep_table(sweep_report):
    """Format a SweepReport summary as a text table."""
    header = "{:<16} {:<22} {:>9} {:>9} {:>9}".format(
        "pair", "metric", "min", "max", "mean")
    lines = [header, "-" * len(header)]
    for pair in sorted(sweep_report.summary):
        for metric in sorted(sweep_report.summary[pair]):
            stats = sweep_report.summary[pair][metric]
            lines.append("{:<16} {:<22} {:>9.2f} {:>9.2f} {:>9.2f}".format(
                pair, metric, stats["min"], stats["max"], stats["mean"]))
    return "\n".join(lines)
