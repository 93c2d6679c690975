"""Rule-based dispatch controllers.

* `dispatch_msc` maximize self-consumption: PV serves the load, its excess
  charges the battery and then goes to the grid; deficits are covered by
  the battery first and then by the grid. Never charges from the grid.
* `dispatch_tou` time-of-use: PV serves the load and its excess charges the
  battery whenever there is headroom; in charge hours the grid tops the
  battery up at its full rating, in discharge hours the battery covers
  the deficit, otherwise the battery stays idle.
* `dispatch_idle` no battery at all, the reference for "no storage".

All the controllers are pure functions of their arguments.
"""
from dataclasses import dataclass

from farmgrid.data_structures.battery import BatteryState
from farmgrid.data_structures.tariffs import price_at
from farmgrid.dispatch.energy import (charge_energy, discharge_energy,
                                      split_pv, build_flows, make_outcome)
from farmgrid.exceptions import ConfigError, DispatchError
from farmgrid.resources import defaults
from farmgrid.utils.generic import is_hour, normalize_to_set


@dataclass(frozen=True)
class TouWindows:
    """Charge and discharge hours of the time-of-use controller."""

    charge_hours: frozenset = frozenset(defaults.TOU_CHARGE_HOURS)
    discharge_hours: frozenset = frozenset(defaults.TOU_DISCHARGE_HOURS)

    def __post_init__(self):
        object.__setattr__(
            self, "charge_hours", frozenset(normalize_to_set(self.charge_hours)))
        object.__setattr__(
            self, "discharge_hours",
            frozenset(normalize_to_set(self.discharge_hours)))
        for hour in self.charge_hours | self.discharge_hours:
            if not is_hour(hour):
                raise ConfigError(
                    "TOU window hours must be integers in [0, 23], "
                    "got {!r}".format(hour))
        overlap = self.charge_hours & self.discharge_hours
        if overlap:
            raise ConfigError(
                "TOU charge and discharge hours overlap: {}".format(
                    sorted(overlap)))

    def to_json(self):
        """Convert to its JSON repr."""
        return {
            "charge_hours": sorted(self.charge_hours),
            "discharge_hours": sorted(self.discharge_hours)
        }

    @classmethod
    def from_json(cls, json_data):
        """Create TouWindows object from JSON representation."""
        unknown = set(json_data) - {"charge_hours", "discharge_hours"}
        if unknown:
            raise ConfigError("Unknown TOU keys: {}".format(sorted(unknown)))
        return cls(
            json_data.get("charge_hours", defaults.TOU_CHARGE_HOURS),
            json_data.get("discharge_hours", defaults.TOU_DISCHARGE_HOURS))


def _check_state(soc, spec):
    if not soc.is_valid(spec):
        raise DispatchError(
            "Battery state {} kWh lies outside [{}, {}]".format(
                soc.soc_kwh, spec.soc_min_kwh, spec.soc_max_kwh))


def dispatch_msc(soc, spec, load_kwh, pv_kwh, price_eur_per_kwh=0.0,
                 export_price_eur_per_kwh=0.0, dt_h=defaults.TIMESTEP_H):
    """Dispatch one step maximizing self-consumption.

    Parameters
    ----------
    soc : BatteryState
    spec : BatterySpec
    load_kwh, pv_kwh : float
        Farm consumption and PV generation of the step
    price_eur_per_kwh, export_price_eur_per_kwh : float
        Prices used to settle the step

    Returns
    -------
    StepOutcome
    """
    _check_state(soc, spec)
    pv_to_load, excess, deficit = split_pv(load_kwh, pv_kwh)
    level = soc.soc_kwh
    pv_to_batt = 0.0
    batt_to_load = 0.0
    if excess > 0:
        level, pv_to_batt, _ = charge_energy(level, spec, excess, dt_h)
    if deficit > 0:
        level, batt_to_load = discharge_energy(level, spec, deficit, dt_h)
    flows = build_flows(
        pv_to_load, excess, deficit,
        pv_to_batt=pv_to_batt, batt_to_load=batt_to_load)
    return make_outcome(
        flows, level, price_eur_per_kwh, export_price_eur_per_kwh)


def dispatch_tou(hour, soc, spec, load_kwh, pv_kwh, windows=None,
                 price_eur_per_kwh=0.0, export_price_eur_per_kwh=0.0,
                 dt_h=defaults.TIMESTEP_H):
    """Dispatch one step following the time-of-use windows.

    Returns
    -------
    StepOutcome
    """
    if not is_hour(hour):
        raise DispatchError(
            "Hour must be an integer in [0, 23], got {!r}".format(hour))
    if windows is None:
        windows = TouWindows()
    _check_state(soc, spec)
    pv_to_load, excess, deficit = split_pv(load_kwh, pv_kwh)
    level = soc.soc_kwh
    pv_to_batt = 0.0
    grid_to_batt = 0.0
    batt_to_load = 0.0
    if excess > 0:
        level, pv_to_batt, _ = charge_energy(level, spec, excess, dt_h)
    if hour in windows.charge_hours:
        remaining = spec.max_charge_kw * dt_h - pv_to_batt
        if remaining > 0:
            level, grid_to_batt, _ = charge_energy(level, spec, remaining, dt_h)
    elif hour in windows.discharge_hours and deficit > 0:
        level, batt_to_load = discharge_energy(level, spec, deficit, dt_h)
    flows = build_flows(
        pv_to_load, excess, deficit, pv_to_batt=pv_to_batt,
        batt_to_load=batt_to_load, grid_to_batt=grid_to_batt)
    return make_outcome(
        flows, level, price_eur_per_kwh, export_price_eur_per_kwh)


def dispatch_idle(soc, spec, load_kwh, pv_kwh, price_eur_per_kwh=0.0,
                  export_price_eur_per_kwh=0.0):
    """Dispatch one step without using the battery."""
    _check_state(soc, spec)
    pv_to_load, excess, deficit = split_pv(load_kwh, pv_kwh)
    flows = build_flows(pv_to_load, excess, deficit)
    return make_outcome(
        flows, soc.soc_kwh, price_eur_per_kwh, export_price_eur_per_kwh)


BASELINES = ["msc", "tou", "idle"]


def rollout(policy, trace, spec, tariff, windows=None, initial_soc_kwh=None):
    """Replay a trace with a rule-based controller.

    Parameters
    ----------
    policy : str
        One of "msc", "tou", "idle"
    trace : ExogenousTrace
    spec : BatterySpec
    tariff : TariffSchedule
    windows : TouWindows, optional
    initial_soc_kwh : float, optional
        Stored energy at step 0, `spec.soc_min_kwh` by default

    Returns
    -------
    outcomes : list of StepOutcome
    """
    if policy not in BASELINES:
        raise ConfigError(
            "Unknown rule-based policy '{}', expected one of {}".format(
                policy, BASELINES))
    if initial_soc_kwh is None:
        initial_soc_kwh = spec.soc_min_kwh
    soc = BatteryState(initial_soc_kwh)
    outcomes = []
    dt_h = trace.dt_h
    for t in range(trace.horizon_steps):
        hour = trace.hour_of_step(t)
        _, price = price_at(tariff, hour)
        load = float(trace.load_kwh[t])
        pv = float(trace.pv_kwh[t])
        if policy == "msc":
            outcome = dispatch_msc(
                soc, spec, load, pv, price, tariff.export_price, dt_h)
        elif policy == "tou":
            outcome = dispatch_tou(
                hour, soc, spec, load, pv, windows, price,
                tariff.export_price, dt_h)
        else:
            outcome = dispatch_idle(
                soc, spec, load, pv, price, tariff.export_price)
        outcomes.append(outcome)
        soc = BatteryState(outcome.next_soc_kwh)
    return outcomes
