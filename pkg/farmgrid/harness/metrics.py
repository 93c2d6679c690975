"""Annual and monthly aggregates of a rollout."""
import warnings

import numpy as np
import pandas as pd

from farmgrid.data_structures.reports import PolicyAggregates
from farmgrid.exceptions import MetricsWarning, TraceLengthError, TraceWarning
from farmgrid.resources import defaults


# Calendar of a non-leap year, step 0 at 1 January 00:00
CALENDAR_ORIGIN = "2023-01-01"


def month_of_steps(trace):
    """Calendar month label ("YYYY-MM") of every step of a trace."""
    offsets = pd.to_timedelta(
        trace.start_hour + np.arange(trace.horizon_steps) * trace.dt_h,
        unit="h")
    stamps = pd.Timestamp(CALENDAR_ORIGIN) + offsets
    return stamps.strftime("%Y-%m")


def aggregate(policy, outcomes, trace):
    """Sum a rollout into PolicyAggregates.

    Parameters
    ----------
    policy : str
    outcomes : list of StepOutcome
        One outcome per step of `trace`
    trace : ExogenousTrace

    Returns
    -------
    PolicyAggregates
    """
    if len(outcomes) != trace.horizon_steps:
        raise TraceLengthError(
            "Got {} outcomes for a trace of {} steps".format(
                len(outcomes), trace.horizon_steps))
    if trace.horizon_steps * trace.dt_h != defaults.HOURS_PER_YEAR:
        warnings.warn(
            "Trace covers {} h instead of a year, annual figures are "
            "totals over the trace and monthly figures are partial".format(
                trace.horizon_steps * trace.dt_h),
            TraceWarning)

    frame = pd.DataFrame({
        "month": month_of_steps(trace),
        "grid_import_kwh": [o.grid_import_kwh for o in outcomes],
        "cost_eur": [o.cost_eur for o in outcomes]
    })
    monthly = frame.groupby("month", sort=True)[
        ["grid_import_kwh", "cost_eur"]].sum()

    annual_pv = float(np.sum(trace.pv_kwh))
    annual_export = sum(o.grid_export_kwh for o in outcomes)
    if annual_pv > 0:
        self_consumption = (annual_pv - annual_export) / annual_pv
    else:
        warnings.warn(
            "Self-consumption ratio of '{}' is undefined on a trace "
            "without PV".format(policy),
            MetricsWarning)
        self_consumption = None

    return PolicyAggregates(
        policy=policy,
        annual_import_kwh=sum(o.grid_import_kwh for o in outcomes),
        annual_export_kwh=annual_export,
        annual_cost_eur=sum(o.cost_eur for o in outcomes),
        annual_load_kwh=float(np.sum(trace.load_kwh)),
        annual_pv_kwh=annual_pv,
        grid_to_batt_kwh=sum(o.flows.grid_to_batt for o in outcomes),
        peak_import_kwh=float(frame["grid_import_kwh"].max()),
        self_consumption_ratio=self_consumption,
        monthly_import_kwh=monthly["grid_import_kwh"].tolist(),
        monthly_cost_eur=monthly["cost_eur"].tolist())
