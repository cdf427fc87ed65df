"""Named configurations used throughout the docs and tests.

The data lives in ``data/fixtures.json`` in matrix coordinates (row 1 on
top).  ``labels`` maps single-letter vertex names to cells.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .grid import Cell, Choice, Configuration


@dataclass(frozen=True)
class Fixture:
    name: str
    config: Configuration
    labels: dict[str, Cell] = field(default_factory=dict, compare=False)
    marking: dict[Cell, Choice] | None = field(default=None, compare=False)

    def cell(self, label: str) -> Cell:
        return self.labels[label]

    def cells(self, letters: str) -> list[Cell]:
        return [self.labels[ch] for ch in letters]

    @property
    def names(self) -> dict[Cell, str]:
        return {c: k for k, c in self.labels.items()}


@lru_cache(maxsize=None)
def _raw() -> dict:
    text = resources.files("adjminors").joinpath("data/fixtures.json").read_text()
    return json.loads(text)


def fixture_names() -> list[str]:
    return sorted(_raw())


def load_fixture(name: str) -> Fixture:
    raw = _raw()
    key = name.upper()
    if not key.startswith("CFG-"):
        key = "CFG-" + key
    if key not in raw:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(sorted(raw))}")
    doc = raw[key]
    config = Configuration.of(doc["boxes"])
    labels = {k: Cell(*v) for k, v in doc.get("labels", {}).items()}
    marking = None
    if "marking" in doc:
        marking = {
            Cell(*map(int, k.split(","))): Choice.DIAGONAL if v == "D" else Choice.ANTIDIAGONAL
            for k, v in doc["marking"].items()
        }
    return Fixture(key, config, labels, marking)
