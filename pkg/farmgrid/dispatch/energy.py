"""Physical and economic arithmetic of a grid-connected PV-battery system.

Battery energy is exchanged on the AC side: charging draws `drawn` kWh
and stores `drawn * eta_c`, discharging removes `delivered / eta_d` kWh
to deliver `delivered`, with `eta_c = eta_d = sqrt(round_trip_efficiency)`.
States never leave [soc_min, soc_max]: results limited by the energy
window land exactly on its boundary.
"""
import math

from farmgrid.data_structures.battery import BatteryState
from farmgrid.data_structures.flows import EnergyFlows, StepOutcome
from farmgrid.exceptions import DispatchError
from farmgrid.resources import defaults


def _check_request(state, spec, requested_kw, dt_h):
    if not (requested_kw >= 0) or not math.isfinite(requested_kw):
        raise DispatchError(
            "Requested power must be finite and non-negative, "
            "got {}".format(requested_kw))
    if not dt_h > 0:
        raise DispatchError("Step length must be positive, got {}".format(dt_h))
    if not state.is_valid(spec):
        raise DispatchError(
            "Battery state {} kWh lies outside [{}, {}]".format(
                state.soc_kwh, spec.soc_min_kwh, spec.soc_max_kwh))


def charge_energy(soc, spec, requested_kwh, dt_h=defaults.TIMESTEP_H):
    """Charge by at most `requested_kwh` of AC energy.

    Returns
    -------
    next_soc : float
    drawn : float
        AC energy taken from the sources
    stored : float
        Energy added to the battery
    """
    eta = spec.charge_efficiency
    headroom = (spec.soc_max_kwh - soc) / eta
    drawn = min(requested_kwh, spec.max_charge_kw * dt_h, headroom)
    if drawn <= 0:
        return soc, 0.0, 0.0
    if drawn == headroom:
        return spec.soc_max_kwh, drawn, spec.soc_max_kwh - soc
    next_soc = min(soc + drawn * eta, spec.soc_max_kwh)
    return next_soc, drawn, next_soc - soc


def discharge_energy(soc, spec, requested_kwh, dt_h=defaults.TIMESTEP_H):
    """Discharge to deliver at most `requested_kwh` of AC energy.

    Returns
    -------
    next_soc : float
    delivered : float
        AC energy given to the load
    """
    eta = spec.discharge_efficiency
    available = (soc - spec.soc_min_kwh) * eta
    delivered = min(
        requested_kwh, spec.max_discharge_kw * dt_h, available)
    if delivered <= 0:
        return soc, 0.0
    if delivered == available:
        return spec.soc_min_kwh, delivered
    return max(soc - delivered / eta, spec.soc_min_kwh), delivered


def apply_charge(state, spec, requested_kw, dt_h=defaults.TIMESTEP_H):
    """Charge the battery for one step.

    Parameters
    ----------
    state : BatteryState
    spec : BatterySpec
    requested_kw : float
        Requested charging power (AC side)
    dt_h : float
        Step length, hours

    Returns
    -------
    new_state : BatteryState
    accepted_kwh : float
        Energy stored, `min(requested * dt, max_charge * dt,
        (soc_max - soc) / eta_c) * eta_c`
    """
    _check_request(state, spec, requested_kw, dt_h)
    next_soc, _, stored = charge_energy(
        state.soc_kwh, spec, requested_kw * dt_h, dt_h)
    return BatteryState(next_soc), stored


def apply_discharge(state, spec, requested_kw, dt_h=defaults.TIMESTEP_H):
    """Discharge the battery for one step.

    Returns
    -------
    new_state : BatteryState
    delivered_kwh : float
        `min(requested * dt, max_discharge * dt, (soc - soc_min) * eta_d)`
    """
    _check_request(state, spec, requested_kw, dt_h)
    next_soc, delivered = discharge_energy(
        state.soc_kwh, spec, requested_kw * dt_h, dt_h)
    return BatteryState(next_soc), delivered


def settle_step(flows, tariff_price_eur_per_kwh, export_price_eur_per_kwh=0.0):
    """Compute grid exchange and cost of a dispatch.

    Returns
    -------
    grid_import_kwh : float
    grid_export_kwh : float
    cost_eur : float
    """
    negative = flows.negative_fields()
    if negative:
        raise DispatchError(
            "Energy flows must be non-negative, got negative {}".format(negative))
    grid_import = flows.grid_to_load + flows.grid_to_batt
    grid_export = flows.pv_to_grid
    cost = (
        grid_import * tariff_price_eur_per_kwh -
        grid_export * export_price_eur_per_kwh
    )
    return grid_import, grid_export, cost


def make_outcome(flows, next_soc, price, export_price):
    """Settle `flows` and wrap them into a StepOutcome."""
    grid_import, grid_export, cost = settle_step(flows, price, export_price)
    return StepOutcome(flows, next_soc, grid_import, grid_export, cost)


def check_balance(flows, load_kwh, pv_kwh,
                  tolerance=defaults.BALANCE_TOLERANCE_KWH):
    """Test both conservation identities of a dispatch."""
    return (
        abs(flows.pv_total - pv_kwh) <= tolerance and
        abs(flows.load_total - load_kwh) <= tolerance
    )


def split_pv(load_kwh, pv_kwh):
    """Serve the load from PV first.

    Returns
    -------
    pv_to_load : float
    excess : float
        PV left after the load
    deficit : float
        Load left after PV
    """
    if not (load_kwh >= 0 and pv_kwh >= 0):
        raise DispatchError(
            "Load and PV must be non-negative, got load={}, pv={}".format(
                load_kwh, pv_kwh))
    pv_to_load = min(pv_kwh, load_kwh)
    return pv_to_load, pv_kwh - pv_to_load, load_kwh - pv_to_load


def build_flows(pv_to_load, pv_excess, deficit,
                pv_to_batt=0.0, batt_to_load=0.0, grid_to_batt=0.0):
    """Close the balance of a dispatch given the battery flows."""
    return EnergyFlows(
        pv_to_load=pv_to_load,
        pv_to_batt=pv_to_batt,
        pv_to_grid=max(pv_excess - pv_to_batt, 0.0),
        batt_to_load=batt_to_load,
        grid_to_load=max(deficit - batt_to_load, 0.0),
        grid_to_batt=grid_to_batt
    )
