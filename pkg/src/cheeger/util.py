"""Shared error types, the infinity sentinel, and canonical JSON helpers."""

from __future__ import annotations

import json


class InputError(ValueError):
    """Raised for malformed or out-of-range inputs."""


class ResourceError(RuntimeError):
    """Raised when an exact computation would exceed a configured cap."""


class Infinite:
    """Tagged +infinity sentinel for ratios with zero denominator.

    Kept out of floating-point arithmetic on purpose: code must branch on
    ``x is INF`` instead of doing math with it.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"


INF = Infinite()


def is_infinite(x) -> bool:
    return x is INF


def json_value(x):
    """Make a quantity JSON-encodable; INF becomes the string "inf"."""
    if x is INF:
        return "inf"
    return x


def canonical_json(obj) -> str:
    """Deterministic JSON encoding (sorted keys, no whitespace)."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
