"""Export of long-format plot data, `step,policy,value`."""
import pandas as pd

from farmgrid.exceptions import PlotDataError


PLOT_KINDS = {
    "hourly_import": "grid_import_kwh",
    "soc_trace": "soc_kwh",
    "hourly_cost": "cost_eur",
    "battery_power": "battery_power_kwh"
}


def parse_window(text):
    """Parse a window 'a..b' into the half-open step range (a, b)."""
    try:
        start, stop = text.split("..")
        return int(start), int(stop)
    except (AttributeError, ValueError):
        raise PlotDataError(
            "Window must look like 'a..b', got {!r}".format(text))


def export_plot_data(series, kind, window, path=None):
    """Gather one quantity of several rollouts over a window of steps.

    Parameters
    ----------
    series : dict
        Policy name -> rollout frame (see `outcomes_to_frame`)
    kind : str
        One of `PLOT_KINDS`
    window : tuple of int
        Half-open step range (start, stop)
    path : str, optional
        CSV file to write

    Returns
    -------
    pandas.DataFrame
        Columns `step,policy,value`, policies in the given order
    """
    if kind not in PLOT_KINDS:
        raise PlotDataError(
            "Unknown plot kind '{}', expected one of {}".format(
                kind, sorted(PLOT_KINDS)))
    start, stop = window
    if not series:
        raise PlotDataError("No series to export")
    frames = []
    for policy, frame in series.items():
        horizon = len(frame)
        if not (0 <= start < stop <= horizon):
            raise PlotDataError(
                "Window [{}, {}) does not fit a horizon of {} steps".format(
                    start, stop, horizon))
        part = frame.iloc[start:stop]
        frames.append(pd.DataFrame({
            "step": part["step"].to_numpy(),
            "policy": policy,
            "value": part[PLOT_KINDS[kind]].to_numpy()
        }))
    data = pd.concat(frames, ignore_index=True)
    if path is not None:
        out = data.copy()
        out["value"] = [repr(float(v)) for v in out["value"]]
        out.to_csv(path, index=False, lineterminator="\n")
    return data
