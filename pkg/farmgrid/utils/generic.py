"""Collection of generic utils used in FarmGrid."""
import hashlib
import json
import math
import numbers
from collections.abc import Iterable


def normalize_to_set(arg):
    """Normalize argument to be a set."""
    if arg is None:
        return set()
    if isinstance(arg, (str, int)):
        return {arg}
    if isinstance(arg, Iterable):
        return set(arg)
    return {arg}


def is_hour(hour):
    """Test if the argument is an integer hour-of-day."""
    return (
        isinstance(hour, numbers.Integral) and
        not isinstance(hour, bool) and
        0 <= hour <= 23
    )


def is_finite_non_negative(value):
    """Test if the argument is a finite number >= 0."""
    try:
        value = float(value)
    except (TypeError, ValueError):
        return False
    return math.isfinite(value) and value >= 0


def canonical_json(data):
    """Dump data to JSON with a canonical key order."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def json_hash(data):
    """Generate a SHA-256 hex digest of the canonical JSON of data."""
    return hashlib.sha256(
        json.dumps(data, sort_keys=True).encode("utf-8")).hexdigest()
