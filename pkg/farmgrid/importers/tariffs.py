"""Import of tariff schedules from JSON files.

Format::

    {"tiers": {"reduced": 0.10, "standard": 0.15, "peak": 0.25},
     "export": 0.0,
     "hours": {"reduced": [...], "standard": [...], "peak": [...]}}
"""
import json

from farmgrid.data_structures.tariffs import TariffSchedule
from farmgrid.exceptions import TariffError


def load_tariff_json(path):
    """Load a tariff schedule from a JSON file."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            json_data = json.load(f)
    except (OSError, ValueError) as e:
        raise TariffError("Cannot read tariff file '{}': {}".format(path, e))
    if not isinstance(json_data, dict):
        raise TariffError(
            "Tariff file '{}' must contain a JSON object".format(path))
    return TariffSchedule.from_json(json_data)
