"""Configuration of simulation runs.

A run is described by a JSON object::

    {"policy": "qlearn",
     "synth": {"n_cows": 180, "annual_load_kwh": 261000.0,
               "pv_peak_kw": 100.0, "seed": 42},
     "battery": {"capacity_kwh": 13.5},
     "tou": {"charge_hours": [23, 0, 1, 2, 3, 4, 5, 6, 7],
             "discharge_hours": [17, 18]},
     "qlearning": {"episodes": 2000, "n_bins": 10},
     "rng_seed": 42,
     "output_dir": "runs/qlearn"}

Missing keys take the values of `farmgrid.resources.defaults`.
"""
import json
import logging
import os
from dataclasses import dataclass, asdict, field, replace

from farmgrid.data_structures.battery import BatterySpec
from farmgrid.data_structures.learning import QHyperparams
from farmgrid.data_structures.tariffs import TariffSchedule, default_tariff
from farmgrid.dispatch.baselines import TouWindows
from farmgrid.exceptions import ConfigError, FarmGridException
from farmgrid.generators.synthetic import synth_trace
from farmgrid.importers.tariffs import load_tariff_json
from farmgrid.importers.traces import load_trace_csv
from farmgrid.resources import defaults
from farmgrid.utils.generic import json_hash


logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "FARMGRID_CONFIG"

# Keys that do not change the result of a run
NON_SEMANTIC_KEYS = ("output_dir",)


@dataclass(frozen=True)
class RunConfig:
    """Parameters of one simulation run.

    Attributes
    ----------
    policy : str
        One of "msc", "tou", "qlearn", "idle"
    trace_csv : str, optional
        Path of a `step,load_kw,pv_kw` trace
    synth : dict, optional
        Parameters of the synthetic generator, used when no CSV is given
    tariff_json : str, optional
        Path of a tariff file
    tariff : dict, optional
        Inline tariff, same format as the tariff file
    battery : dict
        Overrides of the default battery parameters
    tou : dict
        Charge and discharge hours of the TOU controller
    qlearning : dict
        Overrides of the default Q-learning hyper-parameters
    qtable_csv : str, optional
        Evaluate this Q-table instead of training one
    rng_seed : int
        Seed of the Q-learning exploration
    output_dir : str, optional
        Directory the run artifacts are written to
    """

    policy: str = "qlearn"
    trace_csv: str = None
    synth: dict = None
    tariff_json: str = None
    tariff: dict = None
    battery: dict = field(default_factory=dict)
    tou: dict = field(default_factory=dict)
    qlearning: dict = field(default_factory=dict)
    qtable_csv: str = None
    rng_seed: int = defaults.QLEARNING["rng_seed"]
    output_dir: str = None

    def __post_init__(self):
        for name in ["battery", "tou", "qlearning"]:
            if getattr(self, name) is None:
                object.__setattr__(self, name, dict())
        self.validate()

    def validate(self):
        if self.policy not in defaults.POLICIES:
            raise ConfigError(
                "Unknown policy '{}', expected one of {}".format(
                    self.policy, defaults.POLICIES))
        if self.trace_csv is not None and self.synth is not None:
            raise ConfigError(
                "A run takes exactly one trace source, got both "
                "'trace_csv' and 'synth'")
        if self.tariff_json is not None and self.tariff is not None:
            raise ConfigError(
                "A run takes at most one tariff, got both "
                "'tariff_json' and 'tariff'")
        for name in ["synth", "tariff", "battery", "tou", "qlearning"]:
            value = getattr(self, name)
            if value is not None and not isinstance(value, dict):
                raise ConfigError(
                    "Config key '{}' must be an object, got {!r}".format(
                        name, value))
        if "rng_seed" in self.qlearning:
            raise ConfigError(
                "Set the exploration seed with the top-level 'rng_seed' key")
        if self.synth is not None:
            unknown = set(self.synth) - set(defaults.SYNTH)
            if unknown:
                raise ConfigError(
                    "Unknown synthetic trace parameters: {}".format(
                        sorted(unknown)))
        if self.qtable_csv is not None and self.policy != "qlearn":
            raise ConfigError(
                "A stored Q-table only applies to the 'qlearn' policy, "
                "got '{}'".format(self.policy))
        if (isinstance(self.rng_seed, bool) or
                not isinstance(self.rng_seed, int) or self.rng_seed < 0):
            raise ConfigError(
                "'rng_seed' must be a non-negative integer, got {!r}".format(
                    self.rng_seed))

    @property
    def synthetic(self):
        """True when the run uses a generated trace."""
        return self.trace_csv is None

    def build_trace(self):
        """Load or generate the exogenous trace of the run."""
        if self.trace_csv is not None:
            return load_trace_csv(self.trace_csv)
        params = dict(defaults.SYNTH)
        params.update(self.synth or {})
        return synth_trace(**params)

    def build_battery(self):
        try:
            return BatterySpec.from_json(self.battery)
        except FarmGridException as e:
            raise ConfigError("Invalid battery config: {}".format(e))

    def build_tariff(self):
        if self.tariff_json is not None:
            return load_tariff_json(self.tariff_json)
        if self.tariff is not None:
            return TariffSchedule.from_json(self.tariff)
        return default_tariff()

    def build_windows(self):
        return TouWindows.from_json(self.tou)

    def build_hyperparams(self):
        params = dict(self.qlearning)
        params["rng_seed"] = self.rng_seed
        try:
            return QHyperparams.from_json(params)
        except FarmGridException as e:
            raise ConfigError("Invalid Q-learning config: {}".format(e))

    def with_overrides(self, **overrides):
        """Create a copy with the non-None keyword arguments replaced."""
        overrides = {
            key: value for key, value in overrides.items()
            if value is not None
        }
        if not overrides:
            return self
        unknown = set(overrides) - set(self.__dataclass_fields__)
        if unknown:
            raise ConfigError(
                "Unknown config keys: {}".format(sorted(unknown)))
        if "trace_csv" in overrides:
            overrides.setdefault("synth", None)
        if "tariff_json" in overrides:
            overrides.setdefault("tariff", None)
        return replace(self, **overrides)

    def semantic_json(self):
        """JSON repr without the keys that do not change the result."""
        json_data = self.to_json()
        for key in NON_SEMANTIC_KEYS:
            json_data.pop(key, None)
        return json_data

    def config_hash(self):
        """SHA-256 of the keys that determine the result of the run."""
        return json_hash(self.semantic_json())

    def to_json(self):
        """Convert to its JSON repr."""
        return asdict(self)

    @classmethod
    def from_json(cls, json_data):
        """Create RunConfig object from JSON representation."""
        if not isinstance(json_data, dict):
            raise ConfigError(
                "Config must be a JSON object, got {}".format(
                    type(json_data).__name__))
        unknown = set(json_data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError("Unknown config keys: {}".format(sorted(unknown)))
        return cls(**json_data)


def load_config(path=None):
    """Load a run config.

    Parameters
    ----------
    path : str, optional
        Config JSON file; falls back to `$FARMGRID_CONFIG`, then to the
        defaults

    Returns
    -------
    RunConfig
    """
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR) or None
    if path is None:
        return RunConfig()
    logger.info("Loading config from '%s'", path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            json_data = json.load(f)
    except (OSError, ValueError) as e:
        raise ConfigError("Cannot read config file '{}': {}".format(path, e))
    return RunConfig.from_json(json_data)
