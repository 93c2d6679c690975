"""Data structures describing the battery of a PV-battery system.

* `BatterySpec` physical limits of the storage unit (energy window,
  power ratings, round-trip efficiency).
* `BatteryState` energy currently stored in the unit.
"""
import math
from dataclasses import dataclass, asdict, replace

from farmgrid.exceptions import BatterySpecError
from farmgrid.resources import defaults


@dataclass(frozen=True)
class BatterySpec:
    """Physical limits of a battery.

    Attributes
    ----------
    capacity_kwh : float
        Nameplate energy capacity
    max_charge_kw : float
        Charging power rating (energy drawn per hour)
    max_discharge_kw : float
        Discharging power rating (energy delivered per hour)
    soc_min_kwh : float
        Lowest allowed stored energy
    soc_max_kwh : float
        Highest allowed stored energy
    round_trip_efficiency : float
        Fraction of charged energy recovered on discharge, split
        symmetrically as its square root per direction
    """

    capacity_kwh: float = defaults.BATTERY["capacity_kwh"]
    max_charge_kw: float = defaults.BATTERY["max_charge_kw"]
    max_discharge_kw: float = defaults.BATTERY["max_discharge_kw"]
    soc_min_kwh: float = defaults.BATTERY["soc_min_kwh"]
    soc_max_kwh: float = defaults.BATTERY["soc_max_kwh"]
    round_trip_efficiency: float = defaults.BATTERY["round_trip_efficiency"]

    def __post_init__(self):
        self.validate()

    def validate(self):
        """Check the invariants of the specification."""
        for name, value in asdict(self).items():
            if not isinstance(value, (int, float)) or isinstance(value, bool) or\
               not math.isfinite(value):
                raise BatterySpecError(
                    "Battery parameter '{}' must be a finite number, "
                    "got {!r}".format(name, value))
        if not (0 <= self.soc_min_kwh < self.soc_max_kwh <= self.capacity_kwh):
            raise BatterySpecError(
                "Battery energy window must satisfy "
                "0 <= soc_min < soc_max <= capacity, got "
                "soc_min={}, soc_max={}, capacity={}".format(
                    self.soc_min_kwh, self.soc_max_kwh, self.capacity_kwh))
        if self.max_charge_kw <= 0 or self.max_discharge_kw <= 0:
            raise BatterySpecError(
                "Battery power ratings must be positive, got "
                "charge={} kW, discharge={} kW".format(
                    self.max_charge_kw, self.max_discharge_kw))
        if not (0 < self.round_trip_efficiency <= 1):
            raise BatterySpecError(
                "Round-trip efficiency must lie in (0, 1], got {}".format(
                    self.round_trip_efficiency))

    @property
    def charge_efficiency(self):
        return math.sqrt(self.round_trip_efficiency)

    @property
    def discharge_efficiency(self):
        return math.sqrt(self.round_trip_efficiency)

    @property
    def usable_kwh(self):
        """Width of the allowed energy window."""
        return self.soc_max_kwh - self.soc_min_kwh

    def with_overrides(self, overrides):
        """Create a copy of the spec with some parameters replaced.

        Overriding only the capacity moves `soc_max_kwh` along with it.
        """
        if not overrides:
            return self
        unknown = set(overrides) - set(asdict(self))
        if unknown:
            raise BatterySpecError(
                "Unknown battery parameters: {}".format(sorted(unknown)))
        overrides = dict(overrides)
        if "capacity_kwh" in overrides and "soc_max_kwh" not in overrides:
            overrides["soc_max_kwh"] = overrides["capacity_kwh"]
        return replace(self, **overrides)

    def to_json(self):
        """Convert to its JSON repr."""
        return asdict(self)

    @classmethod
    def from_json(cls, json_data):
        """Create BatterySpec object from JSON representation."""
        return cls().with_overrides(json_data)


@dataclass(frozen=True)
class BatteryState:
    """Energy stored in the battery, kWh."""

    soc_kwh: float

    def is_valid(self, spec):
        """Test if the state lies within the energy window of `spec`."""
        return spec.soc_min_kwh <= self.soc_kwh <= spec.soc_max_kwh

    @classmethod
    def empty(cls, spec):
        """Create a state at the lower end of the energy window."""
        return cls(spec.soc_min_kwh)
