"""Collection of data structures for run and comparison reports."""
from dataclasses import dataclass, asdict, field

from farmgrid.exceptions import ComparisonError


def reduction_pct(value, baseline_value):
    """Relative reduction of `value` against `baseline_value`, percent."""
    if not baseline_value > 0:
        raise ComparisonError(
            "Cannot compute a reduction against a non-positive baseline "
            "value {}".format(baseline_value))
    return 100.0 * (baseline_value - value) / baseline_value


@dataclass(frozen=True)
class PolicyAggregates:
    """Annual totals of one policy over a trace.

    `self_consumption_ratio` is `(pv - export) / pv`, None without PV.
    Monthly lists follow calendar months of a non-leap year starting at
    step 0 and only cover the months the trace reaches.
    """

    policy: str
    annual_import_kwh: float
    annual_export_kwh: float
    annual_cost_eur: float
    annual_load_kwh: float
    annual_pv_kwh: float
    grid_to_batt_kwh: float
    peak_import_kwh: float
    self_consumption_ratio: float = None
    monthly_import_kwh: list = field(default_factory=list)
    monthly_cost_eur: list = field(default_factory=list)

    def to_json(self):
        """Convert to its JSON repr."""
        return asdict(self)

    @classmethod
    def from_json(cls, json_data):
        """Create PolicyAggregates object from JSON representation."""
        return cls(**json_data)


METRICS = {
    "import_reduction_pct": "annual_import_kwh",
    "cost_reduction_pct": "annual_cost_eur"
}

MONTHLY_METRICS = {
    "import_reduction_pct": "monthly_import_kwh",
    "cost_reduction_pct": "monthly_cost_eur"
}


class ComparisonReport(object):
    """Pairwise comparison of policies against a baseline.

    Attributes
    ----------
    baseline : str
        Name of the reference policy
    policies : dict
        Policy name -> PolicyAggregates
    pairwise : dict
        "<policy>_vs_<baseline>" -> {metric: percent}; when the monthly
        breakdown is available also "monthly_<metric>_min"/"_max"
    provenance : dict
        Config hashes, seeds and library versions of the compared runs
    """

    def __init__(self, baseline, policies, pairwise, provenance=None):
        self.baseline = baseline
        self.policies = policies
        self.pairwise = pairwise
        if provenance is None:
            provenance = dict()
        self.provenance = provenance

    @staticmethod
    def pair_key(policy, baseline):
        return "{}_vs_{}".format(policy, baseline)

    def check_consistency(self, tolerance=1e-9):
        """Recompute every percentage from the absolute fields.

        Raises
        ------
        ComparisonError
            If a stored percentage disagrees with its recomputation.
        """
        base = self.policies[self.baseline]
        for name, aggregates in self.policies.items():
            if name == self.baseline:
                continue
            entry = self.pairwise[self.pair_key(name, self.baseline)]
            for metric, attr in METRICS.items():
                expected = reduction_pct(
                    getattr(aggregates, attr), getattr(base, attr))
                if abs(entry[metric] - expected) > tolerance:
                    raise ComparisonError(
                        "Inconsistent {} of '{}': stored {}, recomputed {}".format(
                            metric, name, entry[metric], expected))
        return True

    def to_json(self):
        """Convert to its JSON repr."""
        return {
            "baseline": self.baseline,
            "policies": {
                name: aggregates.to_json()
                for name, aggregates in self.policies.items()
            },
            "pairwise": self.pairwise,
            "provenance": self.provenance
        }

    @classmethod
    def from_json(cls, json_data):
        """Create ComparisonReport object from JSON representation."""
        policies = {
            name: PolicyAggregates.from_json(data)
            for name, data in json_data["policies"].items()
        }
        return cls(
            json_data["baseline"], policies, json_data["pairwise"],
            json_data.get("provenance"))


class SweepReport(object):
    """Summary of Q-learning runs over several seeds.

    Attributes
    ----------
    baseline : str
    seeds : list of int
    per_seed : dict
        Seed -> pairwise entries of the comparison of that seed
    summary : dict
        Pair -> metric -> {"min", "max", "mean"} over the seeds
    """

    def __init__(self, baseline, seeds, per_seed, summary, provenance=None):
        self.baseline = baseline
        self.seeds = seeds
        self.per_seed = per_seed
        self.summary = summary
        if provenance is None:
            provenance = dict()
        self.provenance = provenance

    def to_json(self):
        """Convert to its JSON repr."""
        return {
            "baseline": self.baseline,
            "seeds": self.seeds,
            "per_seed": {str(seed): entry for seed, entry in self.per_seed.items()},
            "summary": self.summary,
            "provenance": self.provenance
        }
