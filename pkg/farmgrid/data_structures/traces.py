"""Data structure for hourly exogenous series of a farm."""
import hashlib

import numpy as np

from farmgrid.exceptions import TraceError, TraceValidationError
from farmgrid.resources import defaults
from farmgrid.utils.generic import is_hour


def _as_readonly_series(values, name):
    try:
        array = np.array(values, dtype=np.float64)
    except (TypeError, ValueError):
        raise TraceValidationError(
            "Series '{}' must contain numbers".format(name), field=name)
    if array.ndim != 1:
        raise TraceValidationError(
            "Series '{}' must be one-dimensional".format(name), field=name)
    bad = np.flatnonzero(~np.isfinite(array) | (array < 0))
    if bad.size > 0:
        row = int(bad[0])
        raise TraceValidationError(
            "Series '{}' has an invalid value {!r} at row {} "
            "(values must be finite and non-negative)".format(
                name, array[row], row),
            row=row, field=name)
    array.setflags(write=False)
    return array


class ExogenousTrace(object):
    """Hourly farm load and PV generation over a horizon.

    Attributes
    ----------
    load_kwh : numpy.ndarray
        Farm consumption of each step, kWh
    pv_kwh : numpy.ndarray
        PV generation of each step, kWh
    start_hour : int
        Hour-of-day of step 0
    dt_h : float
        Step length, hours
    source : str
        Free-text provenance ("synthetic ...", path of a CSV file)
    """

    def __init__(self, load_kwh, pv_kwh, start_hour=0,
                 dt_h=defaults.TIMESTEP_H, source=None):
        """Initialize and validate a trace."""
        load_kwh = _as_readonly_series(load_kwh, "load_kwh")
        pv_kwh = _as_readonly_series(pv_kwh, "pv_kwh")
        if load_kwh.shape != pv_kwh.shape:
            raise TraceError(
                "Load and PV series must have equal lengths, "
                "got {} and {}".format(load_kwh.size, pv_kwh.size))
        if load_kwh.size == 0:
            raise TraceError("Trace must contain at least one step")
        if not is_hour(start_hour):
            raise TraceError(
                "Start hour must be an integer in [0, 23], got {!r}".format(
                    start_hour))
        if not dt_h > 0:
            raise TraceError("Step length must be positive, got {}".format(dt_h))
        self._load_kwh = load_kwh
        self._pv_kwh = pv_kwh
        self._start_hour = int(start_hour)
        self._dt_h = float(dt_h)
        self.source = source

    @property
    def load_kwh(self):
        return self._load_kwh

    @property
    def pv_kwh(self):
        return self._pv_kwh

    @property
    def start_hour(self):
        return self._start_hour

    @property
    def dt_h(self):
        return self._dt_h

    @property
    def horizon_steps(self):
        return int(self._load_kwh.size)

    def __len__(self):
        return self.horizon_steps

    def __eq__(self, other):
        if not isinstance(other, ExogenousTrace):
            return NotImplemented
        return (
            self.start_hour == other.start_hour and
            self.dt_h == other.dt_h and
            np.array_equal(self.load_kwh, other.load_kwh) and
            np.array_equal(self.pv_kwh, other.pv_kwh)
        )

    def __repr__(self):
        return "ExogenousTrace(horizon_steps={}, start_hour={}, source={!r})".format(
            self.horizon_steps, self.start_hour, self.source)

    def hour_of_step(self, step):
        """Get the hour-of-day of a step."""
        return (self._start_hour + step) % defaults.HOURS_PER_DAY

    def hours(self):
        """Get the list of hours-of-day of all the steps."""
        return [self.hour_of_step(t) for t in range(self.horizon_steps)]

    def digest(self):
        """SHA-256 of the series, the start hour and the step length.

        Two traces with equal data have the same digest whatever their
        source.
        """
        sha = hashlib.sha256()
        sha.update("{}|{!r}|".format(self._start_hour, self._dt_h).encode())
        sha.update(self._load_kwh.astype("<f8").tobytes())
        sha.update(self._pv_kwh.astype("<f8").tobytes())
        return sha.hexdigest()

    def window(self, start, stop):
        """Create a trace restricted to the steps [start, stop)."""
        if not (0 <= start < stop <= self.horizon_steps):
            raise TraceError(
                "Invalid window [{}, {}) of a trace with {} steps".format(
                    start, stop, self.horizon_steps))
        return ExogenousTrace(
            self._load_kwh[start:stop], self._pv_kwh[start:stop],
            start_hour=self.hour_of_step(start), dt_h=self._dt_h,
            source=self.source)
