"""Lexicographic multi-criteria path planning.

Thin wrappers over the compiled ``_lexplan`` module that decode its JSON and
CSV results into Python objects.
"""

import csv
import io
import json
import os
from pathlib import Path

_bundled = Path(__file__).with_name("scenarios")
if _bundled.is_dir():
    os.environ.setdefault("LEXPLAN_SCENARIO_DIR", str(_bundled))

from ._lexplan import (  # noqa: E402
    EnumerationLimitError,
    ScenarioParseError,
    brute_force,
    lex_search,
    scenario_directory,
    shortest_path,
)
from . import _lexplan  # noqa: E402

__all__ = [
    "EnumerationLimitError",
    "ScenarioParseError",
    "benchmark",
    "brute_force",
    "criteria_study",
    "lex_search",
    "load_scenario",
    "run",
    "scenario_directory",
    "shortest_path",
]


def _rows(text):
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def load_scenario(scenario, seed=None, overrides=()):
    """Validated scenario as a dict. ``scenario`` is a path or a bundled name."""
    return json.loads(_lexplan.scenario_json(str(scenario), seed, list(overrides)))


def run(scenario, seed=None, overrides=(), timing=False):
    """Runs a scenario and returns ``(metrics, trace)``.

    ``metrics`` is the dict written to metrics.json by the CLI; ``trace`` is a
    list of dicts with keys tick, x, y, heading and output.
    """
    metrics, trace = _lexplan.run(str(scenario), seed, list(overrides), timing)
    return json.loads(metrics), _rows(trace)


def criteria_study(scenario, seed=None, overrides=()):
    return json.loads(_lexplan.criteria_study(str(scenario), seed, list(overrides)))


def benchmark(densities=None, k_levels=None, repetitions=5, seed=0):
    """Timing records as a list of dicts, one per (density, K)."""
    kwargs = {"repetitions": repetitions, "seed": seed}
    if densities is not None:
        kwargs["densities"] = list(densities)
    if k_levels is not None:
        kwargs["k_levels"] = list(k_levels)
    return _rows(_lexplan.benchmark(**kwargs))
