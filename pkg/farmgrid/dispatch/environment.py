"""Environment of the Q-learning controller.

Action semantics of one step:

* Charge: PV serves the load, PV excess charges the battery, the grid tops
  the charge up to the battery rating; any remaining deficit is imported
  and any PV the battery cannot take is exported.
* Discharge: PV serves the load, the battery covers the deficit as far as
  it can, the rest is imported; PV excess is exported.
* Idle: PV serves the load, deficit imported, excess exported.
"""
from farmgrid.data_structures.flows import EnergyFlows
from farmgrid.data_structures.learning import Action, RewardMode, RewardSpec
from farmgrid.data_structures.tariffs import price_at
from farmgrid.dispatch.energy import (charge_energy, discharge_energy,
                                      split_pv, make_outcome)
from farmgrid.exceptions import DispatchError
from farmgrid.resources import defaults


def transition(action, soc_kwh, spec, load_kwh, pv_kwh,
               dt_h=defaults.TIMESTEP_H):
    """Compute the flows of an action on plain floats.

    Returns
    -------
    next_soc : float
    flows : tuple
        (pv_to_load, pv_to_batt, pv_to_grid,
         batt_to_load, grid_to_load, grid_to_batt)
    """
    pv_to_load, excess, deficit = split_pv(load_kwh, pv_kwh)
    pv_to_batt = 0.0
    grid_to_batt = 0.0
    batt_to_load = 0.0
    if action == Action.CHARGE:
        if excess > 0:
            soc_kwh, pv_to_batt, _ = charge_energy(soc_kwh, spec, excess, dt_h)
        remaining = spec.max_charge_kw * dt_h - pv_to_batt
        if remaining > 0:
            soc_kwh, grid_to_batt, _ = charge_energy(
                soc_kwh, spec, remaining, dt_h)
    elif action == Action.DISCHARGE:
        if deficit > 0:
            soc_kwh, batt_to_load = discharge_energy(
                soc_kwh, spec, deficit, dt_h)
    elif action != Action.IDLE:
        raise DispatchError("Unknown action {!r}".format(action))
    return soc_kwh, (
        pv_to_load,
        pv_to_batt,
        max(excess - pv_to_batt, 0.0),
        batt_to_load,
        max(deficit - batt_to_load, 0.0),
        grid_to_batt
    )


def env_step(hour, soc, spec, load_kwh, pv_kwh, action, tariff,
             dt_h=defaults.TIMESTEP_H):
    """Apply an action for one step and settle it at the hour's price.

    Parameters
    ----------
    hour : int
    soc : BatteryState
    spec : BatterySpec
    load_kwh, pv_kwh : float
    action : Action
    tariff : TariffSchedule

    Returns
    -------
    StepOutcome
    """
    _, price = price_at(tariff, hour)
    if not soc.is_valid(spec):
        raise DispatchError(
            "Battery state {} kWh lies outside [{}, {}]".format(
                soc.soc_kwh, spec.soc_min_kwh, spec.soc_max_kwh))
    try:
        action = Action(action)
    except ValueError:
        raise DispatchError("Unknown action {!r}".format(action))
    next_soc, flows = transition(
        action, soc.soc_kwh, spec, load_kwh, pv_kwh, dt_h)
    return make_outcome(
        EnergyFlows(*flows), next_soc, price, tariff.export_price)


def reward(outcome, spec=None):
    """Reward of a settled step.

    `RewardMode.NEGATIVE_COST` gives `-cost_eur`,
    `RewardMode.NEGATIVE_IMPORT` gives `-grid_import_kwh`.
    """
    if spec is None:
        spec = RewardSpec()
    if spec.mode == RewardMode.NEGATIVE_COST:
        return -outcome.cost_eur
    return -outcome.grid_import_kwh
