"""Unit testing of the environment of the Q-learning controller."""
import pytest

from farmgrid.data_structures.battery import BatteryState
from farmgrid.data_structures.flows import EnergyFlows, StepOutcome
from farmgrid.data_structures.learning import Action, RewardSpec
from farmgrid.dispatch.environment import env_step, reward, transition
from farmgrid.dispatch.energy import check_balance
from farmgrid.exceptions import DispatchError, QLearningError, TariffError

from tests.resources import DEFAULT_SPEC, LOSSY_SPEC, TARIFF


class TestEnvStep(object):
    """Test class for `env_step`."""

    def test_charge_from_grid(self):
        outcome = env_step(
            3, BatteryState(5.0), DEFAULT_SPEC, 10.0, 0.0, Action.CHARGE,
            TARIFF)
        assert outcome.grid_import_kwh == 15.0
        assert outcome.next_soc_kwh == 10.0
        assert outcome.cost_eur == pytest.approx(1.50)

    def test_discharge_empty_equals_idle(self):
        for load, pv in [(10.0, 0.0), (3.0, 8.0), (0.0, 0.0)]:
            discharge = env_step(
                12, BatteryState(0.0), DEFAULT_SPEC, load, pv,
                Action.DISCHARGE, TARIFF)
            idle = env_step(
                12, BatteryState(0.0), DEFAULT_SPEC, load, pv, Action.IDLE,
                TARIFF)
            assert discharge == idle

    def test_idle_nothing(self):
        outcome = env_step(
            0, BatteryState(2.0), DEFAULT_SPEC, 0.0, 0.0, Action.IDLE, TARIFF)
        assert outcome.flows == EnergyFlows()
        assert outcome.cost_eur == 0.0
        assert outcome.next_soc_kwh == 2.0

    def test_charge_uses_pv_first(self):
        outcome = env_step(
            12, BatteryState(0.0), DEFAULT_SPEC, 2.0, 5.0, Action.CHARGE,
            TARIFF)
        assert outcome.flows.pv_to_batt == 3.0
        assert outcome.flows.grid_to_batt == 2.0
        assert outcome.flows.pv_to_grid == 0.0
        assert outcome.next_soc_kwh == 5.0

    def test_discharge_exports_surplus(self):
        outcome = env_step(
            12, BatteryState(10.0), DEFAULT_SPEC, 2.0, 5.0, Action.DISCHARGE,
            TARIFF)
        assert outcome.flows.batt_to_load == 0.0
        assert outcome.grid_export_kwh == 3.0
        assert outcome.next_soc_kwh == 10.0

    def test_actions_by_code(self):
        by_code = env_step(
            18, BatteryState(10.0), DEFAULT_SPEC, 20.0, 0.0, 1, TARIFF)
        by_name = env_step(
            18, BatteryState(10.0), DEFAULT_SPEC, 20.0, 0.0, Action.DISCHARGE,
            TARIFF)
        assert by_code == by_name
        assert by_code.cost_eur == pytest.approx(15.0 * 0.25)

    def test_errors(self):
        with pytest.raises(DispatchError):
            env_step(0, BatteryState(0.0), DEFAULT_SPEC, 1.0, 0.0, 3, TARIFF)
        with pytest.raises(DispatchError):
            env_step(
                0, BatteryState(-1.0), DEFAULT_SPEC, 1.0, 0.0, Action.IDLE,
                TARIFF)
        with pytest.raises(TariffError):
            env_step(
                24, BatteryState(0.0), DEFAULT_SPEC, 1.0, 0.0, Action.IDLE,
                TARIFF)
        with pytest.raises(DispatchError):
            transition(7, 0.0, DEFAULT_SPEC, 1.0, 0.0)

    def test_conservation_of_every_action(self):
        for action in Action:
            for soc in [LOSSY_SPEC.soc_min_kwh, 6.0, LOSSY_SPEC.soc_max_kwh]:
                for load, pv in [(10.0, 0.0), (3.0, 8.0), (4.0, 4.0)]:
                    outcome = env_step(
                        9, BatteryState(soc), LOSSY_SPEC, load, pv, action,
                        TARIFF)
                    assert check_balance(outcome.flows, load, pv)
                    assert LOSSY_SPEC.soc_min_kwh <= outcome.next_soc_kwh <=\
                        LOSSY_SPEC.soc_max_kwh


class TestReward(object):
    """Test class for `reward`."""

    def _outcome(self, grid_import, grid_export, cost):
        return StepOutcome(
            EnergyFlows(grid_to_load=grid_import, pv_to_grid=grid_export),
            0.0, grid_import, grid_export, cost)

    def test_negative_cost(self):
        assert reward(self._outcome(15.0, 0.0, 15.0 * 0.15)) ==\
            pytest.approx(-2.25)
        assert reward(self._outcome(0.0, 0.0, 0.0)) == 0.0
        assert reward(self._outcome(0.0, 4.0, 0.0)) == 0.0

    def test_negative_import(self):
        spec = RewardSpec("negative_import")
        assert reward(self._outcome(15.0, 0.0, 2.25), spec) == -15.0

    def test_unknown_mode(self):
        with pytest.raises(QLearningError):
            RewardSpec("profit")
