"""Collection of data structures of the tabular Q-learning controller.

* `Action` battery actions with their integer codes.
* `DiscreteState` (hour-of-day, SoC bin) index of the Q-table.
* `RewardSpec` choice of the per-step reward.
* `QHyperparams` training hyper-parameters.
* `QTable` dense table of action values over 24 x n_bins x 3.
"""
import math
from dataclasses import dataclass, asdict
from enum import Enum, IntEnum

import numpy as np

from farmgrid.exceptions import QLearningError
from farmgrid.resources import defaults


class Action(IntEnum):
    """Battery action."""

    CHARGE = 0
    DISCHARGE = 1
    IDLE = 2


N_ACTIONS = len(Action)


@dataclass(frozen=True)
class DiscreteState:
    """Index of a Q-table row."""

    hour: int
    soc_bin: int


class RewardMode(Enum):
    """Per-step reward definitions."""

    # r = -cost_eur
    NEGATIVE_COST = "negative_cost"
    # r = -grid_import_kwh
    NEGATIVE_IMPORT = "negative_import"


@dataclass(frozen=True)
class RewardSpec:
    """Reward definition of the environment."""

    mode: RewardMode = RewardMode.NEGATIVE_COST

    def __post_init__(self):
        if not isinstance(self.mode, RewardMode):
            try:
                object.__setattr__(self, "mode", RewardMode(self.mode))
            except ValueError:
                raise QLearningError(
                    "Unknown reward mode {!r}".format(self.mode))


@dataclass(frozen=True)
class QHyperparams:
    """Hyper-parameters of a Q-learning run.

    `epsilon_decay_episodes=None` anneals epsilon over 80% of the
    episodes, `initial_soc_kwh=None` starts every episode empty.
    With `idle_baseline` the temporal-difference target uses the reward
    of a step minus the reward the same step would get with an idle
    battery. The subtracted term depends on neither the state nor the
    action.
    """

    alpha: float = defaults.QLEARNING["alpha"]
    gamma: float = defaults.QLEARNING["gamma"]
    epsilon_start: float = defaults.QLEARNING["epsilon_start"]
    epsilon_end: float = defaults.QLEARNING["epsilon_end"]
    epsilon_decay_episodes: int = defaults.QLEARNING["epsilon_decay_episodes"]
    episodes: int = defaults.QLEARNING["episodes"]
    n_bins: int = defaults.QLEARNING["n_bins"]
    initial_soc_kwh: float = defaults.QLEARNING["initial_soc_kwh"]
    reward_mode: str = defaults.QLEARNING["reward_mode"]
    idle_baseline: bool = defaults.QLEARNING["idle_baseline"]
    rng_seed: int = defaults.QLEARNING["rng_seed"]

    def __post_init__(self):
        self.validate()

    def validate(self):
        """Check the domains of the hyper-parameters."""
        if not (0 < self.alpha <= 1):
            raise QLearningError(
                "Learning rate alpha must lie in (0, 1], got {}".format(self.alpha))
        if not (0 <= self.gamma < 1):
            raise QLearningError(
                "Discount gamma must lie in [0, 1), got {}".format(self.gamma))
        for name in ["epsilon_start", "epsilon_end"]:
            value = getattr(self, name)
            if not (0 <= value <= 1):
                raise QLearningError(
                    "{} must lie in [0, 1], got {}".format(name, value))
        if not isinstance(self.episodes, int) or self.episodes < 0:
            raise QLearningError(
                "Number of episodes must be a non-negative integer, "
                "got {!r}".format(self.episodes))
        if self.epsilon_decay_episodes is not None and\
           (not isinstance(self.epsilon_decay_episodes, int) or
                self.epsilon_decay_episodes < 0):
            raise QLearningError(
                "epsilon_decay_episodes must be a non-negative integer, "
                "got {!r}".format(self.epsilon_decay_episodes))
        if not isinstance(self.n_bins, int) or self.n_bins < 2:
            raise QLearningError(
                "Number of SoC bins must be an integer >= 2, got {!r}".format(
                    self.n_bins))
        if self.initial_soc_kwh is not None and\
           not math.isfinite(self.initial_soc_kwh):
            raise QLearningError(
                "Initial SoC must be finite, got {}".format(self.initial_soc_kwh))
        if not isinstance(self.rng_seed, int):
            raise QLearningError(
                "rng_seed must be an integer, got {!r}".format(self.rng_seed))
        if not isinstance(self.idle_baseline, bool):
            raise QLearningError(
                "idle_baseline must be a boolean, got {!r}".format(
                    self.idle_baseline))
        RewardSpec(self.reward_mode)

    @property
    def decay_episodes(self):
        """Number of episodes over which epsilon is annealed."""
        if self.epsilon_decay_episodes is None:
            return int(defaults.EPSILON_DECAY_SHARE * self.episodes)
        return self.epsilon_decay_episodes

    @property
    def reward_spec(self):
        return RewardSpec(self.reward_mode)

    def to_json(self):
        """Convert to its JSON repr."""
        return asdict(self)

    @classmethod
    def from_json(cls, json_data):
        """Create QHyperparams object from JSON representation."""
        unknown = set(json_data) - set(cls.__dataclass_fields__)
        if unknown:
            raise QLearningError(
                "Unknown Q-learning parameters: {}".format(sorted(unknown)))
        return cls(**json_data)


class QTable(object):
    """Dense table of action values.

    Attributes
    ----------
    n_bins : int
        Number of SoC bins
    values : numpy.ndarray
        Array of shape (24, n_bins, 3) indexed by (hour, soc_bin, action)
    hyperparams : QHyperparams
        Hyper-parameters of the run that produced the table
    """

    def __init__(self, n_bins=None, values=None, hyperparams=None):
        """Initialize a table, zero-filled unless `values` are given."""
        if hyperparams is None:
            hyperparams = QHyperparams(
                n_bins=n_bins if n_bins is not None else defaults.QLEARNING["n_bins"])
        if n_bins is None:
            n_bins = hyperparams.n_bins
        if n_bins != hyperparams.n_bins:
            raise QLearningError(
                "Table has {} bins but its hyper-parameters declare {}".format(
                    n_bins, hyperparams.n_bins))
        shape = (defaults.HOURS_PER_DAY, n_bins, N_ACTIONS)
        if values is None:
            values = np.zeros(shape, dtype=np.float64)
        else:
            values = np.array(values, dtype=np.float64)
            if values.shape != shape:
                raise QLearningError(
                    "Q-values must have shape {}, got {}".format(
                        shape, values.shape))
            if not np.all(np.isfinite(values)):
                raise QLearningError("Q-values must be finite")
        self._n_bins = n_bins
        self._values = values
        self.hyperparams = hyperparams

    @property
    def n_bins(self):
        return self._n_bins

    @property
    def values(self):
        return self._values

    @property
    def shape(self):
        return self._values.shape

    def row(self, state):
        """Get the action values of a state."""
        return self._values[state.hour, state.soc_bin]

    def policy(self):
        """Get the greedy action codes as an array of shape (24, n_bins).

        Ties go to the lowest action code (`numpy.argmax` semantics).
        """
        return np.argmax(self._values, axis=2)

    def copy(self):
        return QTable(self._n_bins, self._values.copy(), self.hyperparams)

    def __eq__(self, other):
        if not isinstance(other, QTable):
            return NotImplemented
        return (
            self._n_bins == other._n_bins and
            np.array_equal(self._values, other._values)
        )

    def __repr__(self):
        return "QTable(n_bins={}, hyperparams={!r})".format(
            self._n_bins, self.hyperparams)
