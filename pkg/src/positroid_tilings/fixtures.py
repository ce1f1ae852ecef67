"""Loaders for the golden example data shipped with the package."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .subdivision import Subdivision, validate

NAMES = (
    "d_2_4",
    "wsimplex_1324",
    "bicolored_2_6",
    "bicolored_5_9",
    "tricolored_3_2_8",
    "chamber_2564137",
    "tiling_3_7",
)


@lru_cache(maxsize=None)
def _raw(name: str) -> str:
    return resources.files(__package__).joinpath("data", f"{name}.json").read_text()


def load(name: str) -> dict:
    """Return a fresh copy of the named fixture as plain JSON data."""
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}")
    return json.loads(_raw(name))


def path(name: str) -> str:
    return str(resources.files(__package__).joinpath("data", f"{name}.json"))


def subdivision(name: str) -> Subdivision:
    sub = Subdivision.from_json(load(name)["subdivision"])
    validate(sub)
    return sub


def tiling_tiles(name: str = "tiling_3_7") -> list[Subdivision]:
    tiles = [Subdivision.from_json(t) for t in load(name)["tiles"]]
    for t in tiles:
        validate(t)
    return tiles
