"""JSON helpers shared by reports: exact rationals print as ``"p/q"``,
plain integers (counts, orders, exponents, exit codes) stay integers."""

import json
from fractions import Fraction

SCHEMA_VERSION = 1


def q(x):
    return str(Fraction(x))


def jsonable(obj):
    """Recursively turn Fractions and tuples into JSON-ready values."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, Fraction):
        return q(obj)
    if isinstance(obj, (int, float)):
        return obj
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    return str(obj)


def dumps(obj):
    return json.dumps(jsonable(obj), indent=2)
