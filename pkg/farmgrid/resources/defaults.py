"""A set of default parameters of the FarmGrid simulator.

Battery defaults describe a Tesla Powerwall 2.0 (13.5 kWh, 5 kW continuous;
the datasheet range is 3.3 kW to 5 kW). Tariff windows follow the Irish
day/night/peak structure; price levels are synthetic.
"""

HOURS_PER_DAY = 24
HOURS_PER_YEAR = 8760
TIMESTEP_H = 1.0

BALANCE_TOLERANCE_KWH = 1e-9

# Battery
BATTERY = {
    "capacity_kwh": 13.5,
    "max_charge_kw": 5.0,
    "max_discharge_kw": 5.0,
    "soc_min_kwh": 0.0,
    "soc_max_kwh": 13.5,
    "round_trip_efficiency": 1.0
}


# Tariff, hour h stands for the interval [h, h + 1)
TIER_PRICES = {
    "reduced": 0.10,
    "standard": 0.15,
    "peak": 0.25
}

EXPORT_PRICE = 0.0

TIER_HOURS = {
    "reduced": [23, 0, 1, 2, 3, 4, 5, 6],
    # 7, 16 and 22 fall between the published windows
    "standard": [7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 19, 20, 21, 22],
    "peak": [17, 18]
}

# Time-of-use baseline
TOU_CHARGE_HOURS = [23, 0, 1, 2, 3, 4, 5, 6, 7]
TOU_DISCHARGE_HOURS = [17, 18]

# Q-learning
QLEARNING = {
    "alpha": 0.1,
    "gamma": 0.95,
    "epsilon_start": 1.0,
    "epsilon_end": 0.05,
    # None means 80% of the episodes
    "epsilon_decay_episodes": None,
    "episodes": 2000,
    "n_bins": 10,
    "initial_soc_kwh": None,
    "reward_mode": "negative_cost",
    # Learn from the reward minus the reward of an idle battery
    "idle_baseline": True,
    "rng_seed": 42
}

EPSILON_DECAY_SHARE = 0.8

# Synthetic dairy farm year
SYNTH = {
    "n_cows": 180,
    "annual_load_kwh": 261000.0,
    "pv_peak_kw": 100.0,
    "seed": 42
}

REFERENCE_HERD = 180
BASE_LOAD_SHARE = 0.55
MILKING_PEAK_HOURS = (6.5, 17.0)
MILKING_PEAK_WIDTH_H = 1.3
LOAD_SEASONAL_AMPLITUDE = 0.2
# Spring calving puts the milk-volume peak in mid May
LOAD_SEASONAL_PEAK_DAY = 135
LOAD_NOISE_SD = 0.08

SOLAR_NOON_H = 13.0
DAYLIGHT_HALF_LENGTH_H = (3.5, 8.5)
PV_SEASONAL_PEAK_DAY = 172
PV_WINTER_AMPLITUDE = 0.3
CLEARNESS_BETA = (3.0, 4.0)

POLICIES = ["msc", "tou", "qlearn", "idle"]
HEADLINE_BASELINE = "tou"
