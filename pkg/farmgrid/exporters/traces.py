"""Export of traces and per-step series to CSV files."""
import pandas as pd

from farmgrid.data_structures.flows import FLOW_FIELDS


def _repr_column(values):
    # repr of a float round-trips exactly through float()
    return [repr(float(v)) for v in values]


def write_trace_csv(trace, path):
    """Write a trace as `step,load_kw,pv_kw`."""
    frame = pd.DataFrame({
        "step": range(trace.horizon_steps),
        "load_kw": _repr_column(trace.load_kwh / trace.dt_h),
        "pv_kw": _repr_column(trace.pv_kwh / trace.dt_h)
    })
    frame.to_csv(path, index=False, lineterminator="\n")
    return path


SERIES_COLUMNS = (
    ["step", "hour", "load_kwh", "pv_kwh"] + list(FLOW_FIELDS) +
    ["soc_kwh", "grid_import_kwh", "grid_export_kwh", "cost_eur",
     "battery_power_kwh"]
)


def outcomes_to_frame(outcomes, trace, actions=None):
    """Tabulate a rollout, one row per step.

    `soc_kwh` is the stored energy at the end of the step.
    """
    records = []
    for t, outcome in enumerate(outcomes):
        record = {
            "step": t,
            "hour": trace.hour_of_step(t),
            "load_kwh": float(trace.load_kwh[t]),
            "pv_kwh": float(trace.pv_kwh[t])
        }
        record.update(outcome.flows.to_json())
        record["soc_kwh"] = outcome.next_soc_kwh
        record["grid_import_kwh"] = outcome.grid_import_kwh
        record["grid_export_kwh"] = outcome.grid_export_kwh
        record["cost_eur"] = outcome.cost_eur
        record["battery_power_kwh"] = outcome.flows.battery_power
        records.append(record)
    frame = pd.DataFrame.from_records(records, columns=SERIES_COLUMNS)
    if actions is not None:
        frame["action"] = [int(a) for a in actions]
    return frame


def write_series_csv(frame, path):
    """Write a tabulated rollout with exact float representations."""
    frame = frame.copy()
    for column in frame.columns:
        if pd.api.types.is_float_dtype(frame[column]):
            frame[column] = _repr_column(frame[column])
    frame.to_csv(path, index=False, lineterminator="\n")
    return path


def read_series_csv(path):
    """Read a rollout written by `write_series_csv`."""
    return pd.read_csv(path, float_precision="round_trip")
