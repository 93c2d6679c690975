"""Import of hourly load/PV traces from CSV files.

Expected format (UTF-8, decimal point, no thousands separators)::

    step,load_kw,pv_kw
    0,31.2,0.0
    1,29.8,0.0

Step 0 is 00:00 of the first day; the values are hourly mean powers, so
with one-hour steps they equal the energy of the step in kWh.
"""
import math
import os

import numpy as np
import pandas as pd

from farmgrid.data_structures.traces import ExogenousTrace
from farmgrid.exceptions import (TraceError, TraceLengthError,
                                 TraceParseError, TraceValidationError)
from farmgrid.resources import defaults


TRACE_COLUMNS = ["step", "load_kw", "pv_kw"]


def _parse_float(text, line, field):
    if not isinstance(text, str) or text.strip() == "":
        raise TraceValidationError(
            "Missing value of '{}' at line {}".format(field, line),
            row=line - 2, field=field)
    try:
        return float(text)
    except ValueError:
        raise TraceParseError(
            "Cannot parse '{}' value {!r} at line {}".format(field, text, line),
            line=line)


def load_trace_csv(path, dt_h=defaults.TIMESTEP_H):
    """Load and validate a trace from a CSV file.

    Parameters
    ----------
    path : str or os.PathLike
    dt_h : float
        Step length, hours

    Returns
    -------
    ExogenousTrace

    Raises
    ------
    TraceParseError
        Malformed file, blank line or unparsable number (with the file line)
    TraceValidationError
        Missing, NaN, infinite or negative value, or out-of-order step
    TraceLengthError
        Empty file or row count not a multiple of 24
    """
    if not os.path.isfile(path):
        raise TraceError("Trace file '{}' does not exist".format(path))
    try:
        frame = pd.read_csv(
            path, dtype=str, keep_default_na=False, skipinitialspace=True,
            skip_blank_lines=False)
    except pd.errors.EmptyDataError:
        raise TraceLengthError("Trace file '{}' is empty".format(path))
    except pd.errors.ParserError as e:
        raise TraceParseError(
            "Cannot parse trace file '{}': {}".format(path, e))

    missing = [c for c in TRACE_COLUMNS if c not in frame.columns]
    if missing:
        raise TraceParseError(
            "Trace file '{}' lacks the columns {}".format(path, missing), line=1)

    # row i of the frame is line i + 2 of the file
    cells = frame[TRACE_COLUMNS].fillna("").itertuples(index=False)
    blank = np.array(
        [all(value.strip() == "" for value in record) for record in cells],
        dtype=bool)
    filled = np.flatnonzero(~blank)
    frame = frame.iloc[:filled[-1] + 1 if len(filled) else 0]
    blank = blank[:len(frame)]
    if blank.any():
        line = int(np.argmax(blank)) + 2
        raise TraceParseError(
            "Blank line {} in trace file '{}'".format(line, path), line=line)

    n_rows = len(frame)
    if n_rows == 0 or n_rows % defaults.HOURS_PER_DAY != 0:
        raise TraceLengthError(
            "Trace file '{}' has {} rows, expected a positive multiple "
            "of {}".format(path, n_rows, defaults.HOURS_PER_DAY))

    load = []
    pv = []
    for row, record in enumerate(frame[TRACE_COLUMNS].itertuples(index=False)):
        line = row + 2
        step = _parse_float(record.step, line, "step")
        if step != row:
            raise TraceValidationError(
                "Expected step {} at line {}, got {!r}".format(
                    row, line, record.step),
                row=row, field="step")
        for field, series in [("load_kw", load), ("pv_kw", pv)]:
            value = _parse_float(getattr(record, field), line, field)
            if not math.isfinite(value) or value < 0:
                raise TraceValidationError(
                    "Invalid '{}' value {!r} at row {} (line {}): values must "
                    "be finite and non-negative".format(
                        field, value, row, line),
                    row=row, field=field)
            series.append(value * dt_h)
    return ExogenousTrace(
        load, pv, start_hour=0, dt_h=dt_h, source=os.fspath(path))
