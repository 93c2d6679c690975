"""Unit testing of traces, their CSV import/export and the generator."""
import numpy as np
import pytest

from farmgrid.data_structures.traces import ExogenousTrace
from farmgrid.exceptions import (TraceError, TraceLengthError,
                                 TraceParseError, TraceValidationError)
from farmgrid.exporters.traces import write_trace_csv
from farmgrid.generators.synthetic import daily_load_shape, synth_trace
from farmgrid.importers.traces import load_trace_csv

from tests.resources import synthetic_year


def _write_rows(path, rows):
    lines = ["step,load_kw,pv_kw"]
    lines += ["{},{},{}".format(*row) for row in rows]
    path.write_text("\n".join(lines) + "\n")
    return path


def _day(load="10.0", pv="0.0"):
    return [[step, load, pv] for step in range(24)]


class TestExogenousTrace(object):
    """Test class for `ExogenousTrace`."""

    def test_read_only_series(self):
        trace = ExogenousTrace([1.0, 2.0], [0.0, 1.0])
        with pytest.raises(ValueError):
            trace.load_kwh[0] = 5.0

    def test_hours(self):
        trace = ExogenousTrace([1.0] * 30, [0.0] * 30, start_hour=20)
        assert trace.hour_of_step(0) == 20
        assert trace.hour_of_step(4) == 0
        assert trace.hours()[-1] == (20 + 29) % 24

    def test_window(self):
        trace = synthetic_year()
        part = trace.window(30, 78)
        assert part.horizon_steps == 48
        assert part.start_hour == 6
        assert np.array_equal(part.pv_kwh, trace.pv_kwh[30:78])
        with pytest.raises(TraceError):
            trace.window(10, 10)

    def test_validation(self):
        with pytest.raises(TraceValidationError) as e:
            ExogenousTrace([1.0, -1.0], [0.0, 0.0])
        assert e.value.row == 1
        assert e.value.field == "load_kwh"
        with pytest.raises(TraceValidationError):
            ExogenousTrace([1.0, 1.0], [0.0, float("nan")])
        with pytest.raises(TraceError):
            ExogenousTrace([1.0, 1.0], [0.0])
        with pytest.raises(TraceError):
            ExogenousTrace([], [])
        with pytest.raises(TraceError):
            ExogenousTrace([1.0], [1.0], start_hour=24)

    def test_digest(self, tmp_path):
        trace = synthetic_year()
        loaded = load_trace_csv(write_trace_csv(trace, tmp_path / "trace.csv"))
        assert loaded.digest() == trace.digest()
        assert trace.window(0, 48).digest() != trace.window(24, 72).digest()
        shifted = ExogenousTrace(
            trace.load_kwh[:24], trace.pv_kwh[:24], start_hour=1)
        assert shifted.digest() != trace.window(0, 24).digest()
        changed = np.array(trace.pv_kwh)
        changed[100] += 1e-6
        assert ExogenousTrace(trace.load_kwh, changed).digest() != trace.digest()


class TestTraceCsv(object):
    """Test class for `load_trace_csv` and `write_trace_csv`."""

    def test_year_round_trip(self, tmp_path):
        trace = synthetic_year()
        path = write_trace_csv(trace, tmp_path / "trace.csv")
        loaded = load_trace_csv(path)
        assert loaded.horizon_steps == 8760
        assert loaded == trace
        assert loaded.source == str(path)

    def test_negative_value(self, tmp_path):
        rows = _day()
        rows[5][1] = "-1.0"
        with pytest.raises(TraceValidationError) as e:
            load_trace_csv(_write_rows(tmp_path / "trace.csv", rows))
        assert e.value.row == 5
        assert e.value.field == "load_kw"

    def test_not_a_number(self, tmp_path):
        rows = _day()
        rows[3][2] = "abc"
        with pytest.raises(TraceParseError) as e:
            load_trace_csv(_write_rows(tmp_path / "trace.csv", rows))
        assert e.value.line == 5

    def test_blank_lines(self, tmp_path):
        path = _write_rows(tmp_path / "trace.csv", _day())
        lines = path.read_text().splitlines()
        path.write_text("\n".join(lines[:5] + [""] + lines[5:]) + "\n")
        with pytest.raises(TraceParseError) as e:
            load_trace_csv(path)
        assert e.value.line == 6

        path.write_text("\n".join(lines[:9] + ["   "] + lines[9:]) + "\n")
        with pytest.raises(TraceParseError) as e:
            load_trace_csv(path)
        assert e.value.line == 10

        lines[12] = "11,10.0,abc"
        path.write_text("\n".join(lines) + "\n\n\n")
        with pytest.raises(TraceParseError) as e:
            load_trace_csv(path)
        assert e.value.line == 13

        path.write_text("\n".join(lines[:12] + lines[13:] + [""]) + "\n\n")
        with pytest.raises(TraceLengthError):
            load_trace_csv(path)

    def test_nan_and_missing(self, tmp_path):
        rows = _day()
        rows[7][2] = "nan"
        with pytest.raises(TraceValidationError):
            load_trace_csv(_write_rows(tmp_path / "trace.csv", rows))
        rows = _day()
        rows[7][1] = ""
        with pytest.raises(TraceValidationError):
            load_trace_csv(_write_rows(tmp_path / "trace.csv", rows))

    def test_steps_in_order(self, tmp_path):
        rows = _day()
        rows[2][0] = 3
        with pytest.raises(TraceValidationError) as e:
            load_trace_csv(_write_rows(tmp_path / "trace.csv", rows))
        assert e.value.field == "step"

    def test_lengths(self, tmp_path):
        rows = [[step, "10.0", "0.0"] for step in range(8761)]
        with pytest.raises(TraceLengthError):
            load_trace_csv(_write_rows(tmp_path / "long.csv", rows))
        with pytest.raises(TraceLengthError):
            load_trace_csv(_write_rows(tmp_path / "header.csv", []))
        empty = tmp_path / "empty.csv"
        empty.write_text("")
        with pytest.raises(TraceLengthError):
            load_trace_csv(empty)

    def test_bad_header(self, tmp_path):
        path = tmp_path / "trace.csv"
        path.write_text("step,load\n0,1.0\n")
        with pytest.raises(TraceParseError):
            load_trace_csv(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(TraceError):
            load_trace_csv(tmp_path / "missing.csv")

    def test_sub_hourly_steps(self, tmp_path):
        path = _write_rows(tmp_path / "trace.csv", _day("8.0", "2.0"))
        trace = load_trace_csv(path, dt_h=0.5)
        assert trace.load_kwh[0] == 4.0
        assert trace.pv_kwh[0] == 1.0


class TestSynthTrace(object):
    """Test class for `synth_trace`."""

    def test_annual_consumption(self):
        for seed in range(20):
            trace = synth_trace(seed=seed)
            assert trace.horizon_steps == 8760
            assert 259695.0 <= np.sum(trace.load_kwh) <= 262305.0

    def test_no_generation_at_night(self):
        for seed in [0, 42, 1234]:
            trace = synth_trace(seed=seed)
            hours = np.arange(8760) % 24
            night = np.isin(hours, [0, 1, 2, 3, 22, 23])
            assert not trace.pv_kwh[night].any()
            assert trace.pv_kwh.max() <= 100.0

    def test_seeded(self):
        assert synth_trace(seed=3) == synth_trace(seed=3)
        assert synth_trace(seed=3) != synth_trace(seed=4)

    def test_summer_generates_more(self):
        trace = synthetic_year()
        daily = trace.pv_kwh.reshape(365, 24).sum(axis=1)
        assert daily[150:210].mean() > 2 * daily[0:30].mean()

    def test_milking_peaks(self):
        shape = daily_load_shape(180)
        assert shape.mean() == pytest.approx(1.0)
        assert shape[6] > shape[2]
        assert shape[16] > shape[12]

    def test_invalid_parameters(self):
        with pytest.raises(TraceError):
            synth_trace(n_cows=0)
        with pytest.raises(TraceError):
            synth_trace(pv_peak_kw=-1.0)
        with pytest.raises(TraceError):
            synth_trace(seed=-1)
