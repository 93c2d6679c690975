"""Collection of data structures and utils for time-of-use tariffs."""
from dataclasses import dataclass, field
from enum import Enum

from farmgrid.exceptions import TariffError
from farmgrid.resources import defaults
from farmgrid.utils.generic import is_finite_non_negative, is_hour


class Tier(Enum):
    """Price tier of an hour."""

    REDUCED = "reduced"
    STANDARD = "standard"
    PEAK = "peak"


TIER_ORDER = (Tier.REDUCED, Tier.STANDARD, Tier.PEAK)


@dataclass(frozen=True)
class TariffSchedule:
    """Hour-of-day tariff.

    Attributes
    ----------
    tier_of_hour : tuple of Tier
        Tier of each of the 24 hours, hour h standing for [h, h + 1)
    price_of_tier : dict
        Import price of each tier, EUR/kWh
    export_price : float
        Remuneration of exported energy, EUR/kWh
    """

    tier_of_hour: tuple
    price_of_tier: dict = field(hash=False)
    export_price: float = defaults.EXPORT_PRICE

    def __post_init__(self):
        object.__setattr__(self, "tier_of_hour", tuple(self.tier_of_hour))
        self.validate()

    def validate(self):
        """Check the invariants of the tariff."""
        if len(self.tier_of_hour) != defaults.HOURS_PER_DAY:
            raise TariffError(
                "Tariff must assign a tier to each of the 24 hours, "
                "got {} entries".format(len(self.tier_of_hour)))
        for hour, tier in enumerate(self.tier_of_hour):
            if not isinstance(tier, Tier):
                raise TariffError(
                    "Invalid tier '{}' at hour {}".format(tier, hour))
        for tier in TIER_ORDER:
            if tier not in self.price_of_tier:
                raise TariffError(
                    "Missing price of the tier '{}'".format(tier.value))
        prices = [self.price_of_tier[t] for t in TIER_ORDER]
        for price in prices + [self.export_price]:
            if not isinstance(price, (int, float)) or\
               not is_finite_non_negative(price):
                raise TariffError(
                    "Tariff prices must be finite and non-negative, "
                    "got {!r}".format(price))
        if not (prices[0] <= prices[1] <= prices[2]):
            raise TariffError(
                "Tier prices must satisfy reduced <= standard <= peak, "
                "got {}".format(prices))

    def hourly_prices(self):
        """Get the list of import prices of the 24 hours."""
        return [self.price_of_tier[t] for t in self.tier_of_hour]

    def hours_of(self, tier):
        """Get the sorted list of hours of a tier."""
        return [h for h, t in enumerate(self.tier_of_hour) if t == tier]

    def to_json(self):
        """Convert to the tariff JSON format."""
        return {
            "tiers": {t.value: self.price_of_tier[t] for t in TIER_ORDER},
            "export": self.export_price,
            "hours": {t.value: self.hours_of(t) for t in TIER_ORDER}
        }

    @classmethod
    def from_json(cls, json_data):
        """Create TariffSchedule object from the tariff JSON format.

        Missing keys fall back to the default tariff.
        """
        unknown = set(json_data) - {"tiers", "export", "hours"}
        if unknown:
            raise TariffError(
                "Unknown tariff keys: {}".format(sorted(unknown)))

        prices = dict(defaults.TIER_PRICES)
        prices.update(json_data.get("tiers", {}))
        try:
            price_of_tier = {Tier(name): price for name, price in prices.items()}
        except ValueError as e:
            raise TariffError("Invalid tier name: {}".format(e))

        hours = json_data.get("hours", defaults.TIER_HOURS)
        tier_of_hour = [None] * defaults.HOURS_PER_DAY
        for name, tier_hours in hours.items():
            try:
                tier = Tier(name)
            except ValueError:
                raise TariffError("Invalid tier name '{}'".format(name))
            for hour in tier_hours:
                if not is_hour(hour):
                    raise TariffError(
                        "Invalid hour {!r} in the tier '{}'".format(hour, name))
                if tier_of_hour[hour] is not None:
                    raise TariffError(
                        "Hour {} is assigned to both '{}' and '{}'".format(
                            hour, tier_of_hour[hour].value, name))
                tier_of_hour[hour] = tier
        missing = [h for h, t in enumerate(tier_of_hour) if t is None]
        if missing:
            raise TariffError(
                "Hours {} are not assigned to any tier".format(missing))

        export_price = json_data.get("export", defaults.EXPORT_PRICE)
        return cls(tier_of_hour, price_of_tier, export_price)


def default_tariff():
    """Create the default three-tier tariff.

    Reduced 23:00-07:00, peak 17:00-19:00, standard otherwise
    (including the unassigned hours 7, 16 and 22).
    """
    return TariffSchedule.from_json({
        "tiers": dict(defaults.TIER_PRICES),
        "export": defaults.EXPORT_PRICE,
        "hours": defaults.TIER_HOURS
    })


def price_at(tariff, hour):
    """Get the tier and the import price of an hour.

    Returns
    -------
    tier : Tier
    price : float
        EUR/kWh
    """
    if not is_hour(hour):
        raise TariffError(
            "Hour must be an integer in [0, 23], got {!r}".format(hour))
    tier = tariff.tier_of_hour[hour]
    return tier, tariff.price_of_tier[tier]
