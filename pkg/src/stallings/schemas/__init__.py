"""Versioned JSON schemas for the machine-readable outputs."""

import json
from functools import lru_cache
from importlib.resources import files

VERSION = "v1"
NAMES = (
    "core_graph",
    "fringe",
    "factor_report",
    "primitivity_report",
    "phi_report",
    "estimate_report",
    "upsilon",
    "oracle",
)


@lru_cache(maxsize=None)
def load(name: str) -> dict:
    if name not in NAMES:
        raise KeyError(f"unknown schema {name!r}; known: {', '.join(NAMES)}")
    return json.loads(files(__name__).joinpath(f"{name}.{VERSION}.json").read_text())
