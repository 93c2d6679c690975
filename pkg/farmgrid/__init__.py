"""Battery dispatch of a dairy farm with PV generation."""
import logging

__version__ = "1.0"

from farmgrid.data_structures.battery import BatterySpec, BatteryState
from farmgrid.data_structures.flows import EnergyFlows, StepOutcome
from farmgrid.data_structures.learning import (Action, DiscreteState,
                                               QHyperparams, QTable,
                                               RewardMode, RewardSpec)
from farmgrid.data_structures.reports import (ComparisonReport,
                                              PolicyAggregates, SweepReport)
from farmgrid.data_structures.tariffs import (TariffSchedule, Tier,
                                              default_tariff, price_at)
from farmgrid.data_structures.traces import ExogenousTrace
from farmgrid.dispatch.baselines import (TouWindows, dispatch_idle,
                                         dispatch_msc, dispatch_tou, rollout)
from farmgrid.dispatch.energy import apply_charge, apply_discharge, settle_step
from farmgrid.dispatch.environment import env_step, reward
from farmgrid.generators.synthetic import synth_trace
from farmgrid.harness.comparison import compare, sweep
from farmgrid.harness.config import RunConfig, load_config
from farmgrid.harness.metrics import aggregate
from farmgrid.harness.runner import run_simulation
from farmgrid.importers.traces import load_trace_csv
from farmgrid.learning.oracle import solve_optimal
from farmgrid.learning.qlearning import (discretize, evaluate_policy,
                                         greedy_action, q_update,
                                         select_action, train)

logging.getLogger(__name__).addHandler(logging.NullHandler())
