"""Tabular Q-learning of battery schedules.

The agent observes (hour-of-day, SoC bin), chooses among
`Action.CHARGE`, `Action.DISCHARGE` and `Action.IDLE` epsilon-greedily and
learns with the one-step temporal-difference update

    Q(s, a) <- Q(s, a) + alpha * (r + gamma * max_a' Q(s', a') - Q(s, a)),

the bootstrap term being dropped on the last step of the trace. With the
`idle_baseline` hyper-parameter, `r` is the step reward minus the reward of
the same step with an idle battery. One episode is one pass over the trace
starting from `initial_soc_kwh`.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from tqdm import tqdm

from farmgrid.data_structures.battery import BatteryState
from farmgrid.data_structures.learning import (Action, DiscreteState,
                                               QHyperparams, QTable,
                                               RewardMode, N_ACTIONS)
from farmgrid.dispatch.environment import env_step, reward, transition
from farmgrid.exceptions import (DiscretizationError, QLearningError,
                                 TraceError)


logger = logging.getLogger(__name__)


def _soc_bin(soc_kwh, soc_min_kwh, usable_kwh, n_bins):
    soc_bin = int((soc_kwh - soc_min_kwh) / usable_kwh * n_bins)
    if soc_bin >= n_bins:
        return n_bins - 1
    return soc_bin


def discretize(soc_kwh, spec, n_bins, hour):
    """Map a continuous state to a Q-table index.

    `soc_bin = floor((soc - soc_min) / (soc_max - soc_min) * n_bins)`,
    the full battery being clamped into the top bin.
    """
    if not isinstance(n_bins, int) or n_bins < 2:
        raise DiscretizationError(
            "Number of SoC bins must be an integer >= 2, got {!r}".format(n_bins))
    if not (spec.soc_min_kwh <= soc_kwh <= spec.soc_max_kwh):
        raise DiscretizationError(
            "SoC {} kWh lies outside [{}, {}]".format(
                soc_kwh, spec.soc_min_kwh, spec.soc_max_kwh))
    return DiscreteState(
        hour, _soc_bin(soc_kwh, spec.soc_min_kwh, spec.usable_kwh, n_bins))


def _check_index(q, s):
    if not (0 <= s.hour < q.shape[0] and 0 <= s.soc_bin < q.n_bins):
        raise QLearningError(
            "State {} lies outside a table of shape {}".format(s, q.shape))


def _argmax(row):
    # First maximum, lowest action code on ties
    best = 0
    if row[1] > row[best]:
        best = 1
    if row[2] > row[best]:
        best = 2
    return best


def greedy_action(q, s):
    """Choose the action of maximal value, ties broken by lowest code."""
    _check_index(q, s)
    return Action(int(np.argmax(q.row(s))))


def select_action(q, s, epsilon, rng):
    """Choose an action epsilon-greedily.

    Parameters
    ----------
    q : QTable
    s : DiscreteState
    epsilon : float
        Probability of a uniformly random action
    rng : numpy.random.Generator
    """
    if not (0 <= epsilon <= 1):
        raise QLearningError(
            "Exploration rate must lie in [0, 1], got {}".format(epsilon))
    if rng.random() < epsilon:
        return Action(int(rng.integers(0, N_ACTIONS)))
    return greedy_action(q, s)


def q_update(q, s, a, r, s_next, terminal, alpha=None, gamma=None):
    """Apply one temporal-difference update in place.

    `alpha` and `gamma` default to the hyper-parameters of the table.

    Returns
    -------
    value : float
        The updated Q(s, a)
    """
    if alpha is None:
        alpha = q.hyperparams.alpha
    if gamma is None:
        gamma = q.hyperparams.gamma
    if not (0 < alpha <= 1):
        raise QLearningError(
            "Learning rate alpha must lie in (0, 1], got {}".format(alpha))
    if not (0 <= gamma < 1):
        raise QLearningError(
            "Discount gamma must lie in [0, 1), got {}".format(gamma))
    if not math.isfinite(r):
        raise QLearningError("Reward must be finite, got {}".format(r))
    _check_index(q, s)
    target = r
    if not terminal:
        _check_index(q, s_next)
        target += gamma * float(np.max(q.row(s_next)))
    a = int(a)
    current = q.values[s.hour, s.soc_bin, a]
    q.values[s.hour, s.soc_bin, a] = current + alpha * (target - current)
    return float(q.values[s.hour, s.soc_bin, a])


def epsilon_at(hyperparams, episode):
    """Exploration rate of an episode, annealed linearly."""
    decay = hyperparams.decay_episodes
    if decay == 0:
        return hyperparams.epsilon_end
    fraction = min(1.0, episode / decay)
    return hyperparams.epsilon_start +\
        (hyperparams.epsilon_end - hyperparams.epsilon_start) * fraction


def _initial_soc(hyperparams, spec):
    if hyperparams.initial_soc_kwh is None:
        return spec.soc_min_kwh
    if not (spec.soc_min_kwh <= hyperparams.initial_soc_kwh <= spec.soc_max_kwh):
        raise QLearningError(
            "Initial SoC {} kWh lies outside [{}, {}]".format(
                hyperparams.initial_soc_kwh, spec.soc_min_kwh, spec.soc_max_kwh))
    return hyperparams.initial_soc_kwh


def _idle_rewards(trace, spec, tariff, hyperparams):
    """Reward of every step with the battery idle, zero without baseline."""
    if not hyperparams.idle_baseline:
        return [0.0] * trace.horizon_steps
    idle = BatteryState(spec.soc_min_kwh)
    reward_spec = hyperparams.reward_spec
    return [
        reward(
            env_step(
                trace.hour_of_step(t), idle, spec, float(trace.load_kwh[t]),
                float(trace.pv_kwh[t]), Action.IDLE, tariff, trace.dt_h),
            reward_spec)
        for t in range(trace.horizon_steps)
    ]


def train(trace, spec, tariff, hyperparams=None, progress=False,
          log_every=None):
    """Learn a Q-table over repeated passes of a trace.

    Parameters
    ----------
    trace : ExogenousTrace
    spec : BatterySpec
    tariff : TariffSchedule
    hyperparams : QHyperparams, optional
    progress : bool
        Show a progress bar over the episodes
    log_every : int, optional
        Log the episode reward every `log_every` episodes

    Returns
    -------
    table : QTable
    curve : list of float
        Total reward of each episode, without the idle baseline
    """
    if hyperparams is None:
        hyperparams = QHyperparams()
    if not isinstance(hyperparams, QHyperparams):
        raise QLearningError(
            "Expected QHyperparams, got {}".format(type(hyperparams).__name__))
    if trace is None or len(trace) == 0:
        raise TraceError("Cannot train on an empty trace")
    initial_soc = _initial_soc(hyperparams, spec)

    table = QTable(hyperparams=hyperparams)
    curve = []
    if hyperparams.episodes == 0:
        return table, curve

    n_bins = hyperparams.n_bins
    alpha = hyperparams.alpha
    gamma = hyperparams.gamma
    negative_cost = hyperparams.reward_spec.mode == RewardMode.NEGATIVE_COST
    horizon = trace.horizon_steps
    last = horizon - 1
    dt_h = trace.dt_h
    hours = trace.hours()
    loads = trace.load_kwh.tolist()
    pvs = trace.pv_kwh.tolist()
    hourly_prices = tariff.hourly_prices()
    prices = [hourly_prices[h] for h in hours]
    export_price = tariff.export_price
    soc_min = spec.soc_min_kwh
    usable = spec.usable_kwh
    baselines = _idle_rewards(trace, spec, tariff, hyperparams)

    # Plain lists are much faster than numpy scalar indexing here
    rows = table.values.reshape(-1, N_ACTIONS).tolist()
    rng = np.random.default_rng(hyperparams.rng_seed)

    logger.info(
        "Training over %d episodes of %d steps (seed %d)",
        hyperparams.episodes, horizon, hyperparams.rng_seed)
    episodes = tqdm(
        range(hyperparams.episodes), disable=not progress, unit="episode")
    for episode in episodes:
        epsilon = epsilon_at(hyperparams, episode)
        explore = (rng.random(horizon) < epsilon).tolist()
        random_actions = rng.integers(0, N_ACTIONS, size=horizon).tolist()

        soc = initial_soc
        row = rows[hours[0] * n_bins + _soc_bin(soc, soc_min, usable, n_bins)]
        total = 0.0
        for t in range(horizon):
            if explore[t]:
                a = random_actions[t]
            else:
                a = _argmax(row)
            soc, flows = transition(a, soc, spec, loads[t], pvs[t], dt_h)
            grid_import = flows[4] + flows[5]
            if negative_cost:
                r = -(grid_import * prices[t] - flows[2] * export_price)
            else:
                r = -grid_import
            total += r
            r -= baselines[t]
            if t == last:
                row[a] += alpha * (r - row[a])
            else:
                next_row = rows[
                    hours[t + 1] * n_bins +
                    _soc_bin(soc, soc_min, usable, n_bins)]
                row[a] += alpha * (r + gamma * max(next_row) - row[a])
                row = next_row
        curve.append(total)
        if log_every and (episode + 1) % log_every == 0:
            logger.info(
                "Episode %d/%d: epsilon=%.4f, reward=%.4f",
                episode + 1, hyperparams.episodes, epsilon, total)

    table.values[...] = np.array(rows).reshape(table.shape)
    if not np.all(np.isfinite(table.values)):
        raise QLearningError("Training produced non-finite Q-values")
    return table, curve


@dataclass(frozen=True)
class PolicyEvaluation:
    """Greedy rollout of a Q-table over a trace."""

    annual_import_kwh: float
    annual_export_kwh: float
    annual_cost_eur: float
    outcomes: list
    actions: list


def evaluate_policy(q, trace, spec, tariff, n_bins=None, initial_soc_kwh=None):
    """Roll the greedy policy of a table out over a trace.

    Parameters
    ----------
    q : QTable
    trace : ExogenousTrace
    spec : BatterySpec
    tariff : TariffSchedule
    n_bins : int, optional
        Expected number of SoC bins of the table
    initial_soc_kwh : float, optional
        Defaults to the initial SoC of the table's hyper-parameters

    Returns
    -------
    PolicyEvaluation
    """
    if n_bins is not None and n_bins != q.n_bins:
        raise QLearningError(
            "Table has {} SoC bins, expected {}".format(q.n_bins, n_bins))
    if initial_soc_kwh is None:
        initial_soc_kwh = _initial_soc(q.hyperparams, spec)
    soc = BatteryState(initial_soc_kwh)
    outcomes = []
    actions = []
    for t in range(trace.horizon_steps):
        hour = trace.hour_of_step(t)
        action = greedy_action(
            q, discretize(soc.soc_kwh, spec, q.n_bins, hour))
        outcome = env_step(
            hour, soc, spec, float(trace.load_kwh[t]), float(trace.pv_kwh[t]),
            action, tariff, trace.dt_h)
        outcomes.append(outcome)
        actions.append(action)
        soc = BatteryState(outcome.next_soc_kwh)
    return PolicyEvaluation(
        annual_import_kwh=sum(o.grid_import_kwh for o in outcomes),
        annual_export_kwh=sum(o.grid_export_kwh for o in outcomes),
        annual_cost_eur=sum(o.cost_eur for o in outcomes),
        outcomes=outcomes,
        actions=actions)
