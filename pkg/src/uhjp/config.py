"""Runtime budgets.

The dense budget bounds every explicit materialization (words, evaluation
vectors, group tables). It is read from ``UHJP_DENSE_BUDGET`` on each call so
tests and the CLI can change it without reloading modules.
"""

import os

DEFAULT_DENSE_BUDGET = 10**6
DEFAULT_DIGIT_GUARD = 100_000
DEFAULT_ENUMERATION_BUDGET = 10**6

_overrides = {}


def _read(name, env, default):
    if name in _overrides:
        return _overrides[name]
    raw = os.environ.get(env)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


def dense_budget() -> int:
    return _read("dense", "UHJP_DENSE_BUDGET", DEFAULT_DENSE_BUDGET)


def digit_guard() -> int:
    """Largest number of decimal digits kept as an exact integer."""
    return _read("digits", "UHJP_DIGIT_GUARD", DEFAULT_DIGIT_GUARD)


def set_budget(*, dense=None, digits=None):
    if dense is not None:
        _overrides["dense"] = int(dense)
    if digits is not None:
        _overrides["digits"] = int(digits)


def reset_budget():
    _overrides.clear()
