"""Backward-induction optimum of a deterministic trace.

The trace and the tariff fully determine the dynamics, so the optimal
schedule follows from dynamic programming over the SoC values reachable
from the initial state. Ties between actions go to the lowest action
code, the same rule as `greedy_action`.
"""
import logging
from dataclasses import dataclass

from farmgrid.data_structures.battery import BatteryState
from farmgrid.data_structures.learning import Action, RewardSpec
from farmgrid.dispatch.environment import env_step, reward
from farmgrid.exceptions import OracleError


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleSolution:
    """Optimal schedule of a trace.

    Attributes
    ----------
    actions : list of Action
    outcomes : list of StepOutcome
    cost_eur : float
        Undiscounted cost of the optimal schedule
    value : float
        Optimal discounted return from the initial state
    n_states : int
        Number of (step, SoC) states explored
    """

    actions: list
    outcomes: list
    cost_eur: float
    value: float
    n_states: int

    def to_json(self):
        """Convert to its JSON repr, actions by name."""
        return {
            "actions": [action.name.lower() for action in self.actions],
            "cost_eur": self.cost_eur,
            "grid_import_kwh": sum(o.grid_import_kwh for o in self.outcomes),
            "value": self.value,
            "n_states": self.n_states
        }


def solve_optimal(trace, spec, tariff, gamma, initial_soc_kwh=None,
                  reward_spec=None, max_states=200000):
    """Compute the optimal action sequence of a trace.

    Parameters
    ----------
    trace : ExogenousTrace
    spec : BatterySpec
    tariff : TariffSchedule
    gamma : float
        Discount in [0, 1], 1 for the undiscounted optimum
    initial_soc_kwh : float, optional
    reward_spec : RewardSpec, optional
    max_states : int
        Upper bound on the number of explored states

    Returns
    -------
    OracleSolution
    """
    if not (0 <= gamma <= 1):
        raise OracleError("Discount must lie in [0, 1], got {}".format(gamma))
    if reward_spec is None:
        reward_spec = RewardSpec()
    if initial_soc_kwh is None:
        initial_soc_kwh = spec.soc_min_kwh
    horizon = trace.horizon_steps

    # Forward pass: reachable SoC values and the outcome of every action
    layers = [{initial_soc_kwh: None}]
    n_states = 1
    for t in range(horizon):
        hour = trace.hour_of_step(t)
        load = float(trace.load_kwh[t])
        pv = float(trace.pv_kwh[t])
        next_layer = dict()
        for soc in layers[t]:
            outcomes = [
                env_step(hour, BatteryState(soc), spec, load, pv, action,
                         tariff, trace.dt_h)
                for action in Action
            ]
            layers[t][soc] = outcomes
            for outcome in outcomes:
                next_layer[outcome.next_soc_kwh] = None
        n_states += len(next_layer)
        if n_states > max_states:
            raise OracleError(
                "More than {} reachable states at step {}".format(max_states, t))
        layers.append(next_layer)
    logger.debug("Oracle explored %d states", n_states)

    # Backward pass
    values = {soc: 0.0 for soc in layers[horizon]}
    best = [dict() for _ in range(horizon)]
    for t in reversed(range(horizon)):
        new_values = dict()
        for soc, outcomes in layers[t].items():
            best_value = None
            best_action = None
            for action, outcome in zip(Action, outcomes):
                value = reward(outcome, reward_spec)
                if t < horizon - 1:
                    value += gamma * values[outcome.next_soc_kwh]
                if best_value is None or value > best_value:
                    best_value = value
                    best_action = action
            new_values[soc] = best_value
            best[t][soc] = best_action
        values = new_values

    actions = []
    outcomes = []
    soc = initial_soc_kwh
    for t in range(horizon):
        action = best[t][soc]
        outcome = layers[t][soc][int(action)]
        actions.append(action)
        outcomes.append(outcome)
        soc = outcome.next_soc_kwh
    return OracleSolution(
        actions=actions,
        outcomes=outcomes,
        cost_eur=sum(o.cost_eur for o in outcomes),
        value=values[initial_soc_kwh],
        n_states=n_states)
