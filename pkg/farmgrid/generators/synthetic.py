"""Synthetic hourly year of a grid-connected dairy farm.

Load follows a daily double-peak milking profile (morning and evening
milking with their cooling and water heating) on top of a base load,
modulated by season and by seeded multiplicative noise, and is finally
scaled so that the year sums to the requested consumption. PV follows a
half-sine over the daylight hours, with day length and amplitude peaking
at the summer solstice and a seeded daily clearness index.
"""
import numpy as np

from farmgrid.data_structures.traces import ExogenousTrace
from farmgrid.exceptions import TraceError
from farmgrid.resources import defaults


def _check_positive(name, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or\
       not np.isfinite(value) or value <= 0:
        raise TraceError(
            "Synthetic trace parameter '{}' must be positive, got {!r}".format(
                name, value))


def _season(day, peak_day):
    """Cosine over the year equal to 1 on `peak_day` and -1 half a year away."""
    return np.cos(2 * np.pi * (day - peak_day) / 365.0)


def daily_load_shape(n_cows):
    """Relative load of the 24 hours of a day (mean 1).

    Milking peaks weigh more the larger the herd is relative to the
    reference herd.
    """
    hours = np.arange(defaults.HOURS_PER_DAY) + 0.5
    milking = np.zeros(defaults.HOURS_PER_DAY)
    for centre in defaults.MILKING_PEAK_HOURS:
        milking += np.exp(
            -0.5 * ((hours - centre) / defaults.MILKING_PEAK_WIDTH_H) ** 2)
    milking /= milking.mean()
    herd_weight = (1 - defaults.BASE_LOAD_SHARE) * n_cows / defaults.REFERENCE_HERD
    shape = defaults.BASE_LOAD_SHARE + herd_weight * milking
    return shape / shape.mean()


def synth_trace(n_cows=defaults.SYNTH["n_cows"],
                annual_load_kwh=defaults.SYNTH["annual_load_kwh"],
                pv_peak_kw=defaults.SYNTH["pv_peak_kw"],
                seed=defaults.SYNTH["seed"]):
    """Generate a synthetic 8760-step farm year.

    Parameters
    ----------
    n_cows : int
        Herd size, shapes the milking peaks
    annual_load_kwh : float
        Annual consumption the load is scaled to
    pv_peak_kw : float
        Peak power of the PV array
    seed : int
        Seed of the noise and clearness draws

    Returns
    -------
    ExogenousTrace
        Starts at 00:00 on 1 January; PV is zero outside
        04:30-21:30 at any time of the year
    """
    _check_positive("n_cows", n_cows)
    _check_positive("annual_load_kwh", annual_load_kwh)
    _check_positive("pv_peak_kw", pv_peak_kw)
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or seed < 0:
        raise TraceError(
            "Synthetic trace seed must be a non-negative integer, got {!r}".format(
                seed))
    rng = np.random.default_rng(seed)

    steps = np.arange(defaults.HOURS_PER_YEAR)
    hour = steps % defaults.HOURS_PER_DAY
    day = steps // defaults.HOURS_PER_DAY
    n_days = defaults.HOURS_PER_YEAR // defaults.HOURS_PER_DAY

    # Load
    seasonal = 1 + defaults.LOAD_SEASONAL_AMPLITUDE * _season(
        day, defaults.LOAD_SEASONAL_PEAK_DAY)
    noise = np.clip(
        rng.normal(1.0, defaults.LOAD_NOISE_SD, size=defaults.HOURS_PER_YEAR),
        0.5, 1.5)
    load = daily_load_shape(n_cows)[hour] * seasonal * noise
    load *= annual_load_kwh / load.sum()

    # PV
    season = _season(day, defaults.PV_SEASONAL_PEAK_DAY)
    short, long = defaults.DAYLIGHT_HALF_LENGTH_H
    half_day = (short + long) / 2 + (long - short) / 2 * season
    sunrise = defaults.SOLAR_NOON_H - half_day
    sunset = defaults.SOLAR_NOON_H + half_day
    t = hour + 0.5
    daylight = (t > sunrise) & (t < sunset)
    elevation = np.where(
        daylight, np.sin(np.pi * (t - sunrise) / (2 * half_day)), 0.0)
    winter = defaults.PV_WINTER_AMPLITUDE
    amplitude = (1 + winter) / 2 + (1 - winter) / 2 * season
    clearness = rng.beta(*defaults.CLEARNESS_BETA, size=n_days)[day]
    pv = pv_peak_kw * amplitude * clearness * np.clip(elevation, 0.0, None)

    return ExogenousTrace(
        load, pv, start_hour=0,
        source="synthetic(n_cows={}, annual_load_kwh={}, pv_peak_kw={}, "
               "seed={})".format(n_cows, annual_load_kwh, pv_peak_kw, seed))
