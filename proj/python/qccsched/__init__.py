# Copyright 2026 The qccsched Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Scheduling of QAOA-style circuits on nearest-neighbor chips.

Instances, schedules and run reports are plain dicts in the same JSON
layout the qccs tool reads and writes.
"""

import json
import os
import pkgutil

__path__ = pkgutil.extend_path(__path__, __name__)

from . import _core  # noqa: E402
from ._core import InstanceError, ParseError, improvement_delta, preset_chips, score  # noqa: E402,F401

__all__ = [
    "InstanceError",
    "ParseError",
    "baseline",
    "check_report",
    "chip",
    "gantt",
    "generate_instance",
    "greedy",
    "horizon_bound",
    "improvement_delta",
    "load",
    "preset_chips",
    "score",
    "solve",
    "validate",
]


def _text(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def load(path):
    """Reads an instance or schedule file into a dict."""
    with open(os.fspath(path), encoding="utf-8") as f:
        return json.load(f)


def chip(spec):
    """Chip for "rigetti-8", "rigetti-21" or "grid:S[:alternating|all-blue]"."""
    return json.loads(_core.chip_json(spec))


def generate_instance(chip="rigetti-8", goals=4, stages=1, variant="qcc", seed=0):
    return json.loads(_core.generate_instance(chip, goals, stages, variant, seed))


def horizon_bound(instance):
    return _core.horizon_bound(_text(instance))


def validate(instance, schedule, horizon=None):
    """Returns (valid, [(rule, detail), ...])."""
    return _core.validate(_text(instance), _text(schedule), horizon)


def baseline(instance):
    return json.loads(_core.baseline(_text(instance)))


def greedy(instance, seed=0):
    return json.loads(_core.greedy(_text(instance), seed))


def solve(instance, engine="half", budget=10.0, seed=0, node_budget=None, restart_budget=None):
    """Runs router, cp, half or last and returns the run report."""
    return json.loads(_core.solve(_text(instance), engine, budget, seed, node_budget, restart_budget))


def check_report(instance, report):
    """Problems found when re-checking a run report; empty when sound."""
    return _core.check_report(_text(instance), _text(report))


def gantt(instance, schedule, fmt="text"):
    if fmt == "svg":
        return _core.gantt_svg(_text(instance), _text(schedule))
    if fmt == "text":
        return _core.gantt_text(_text(instance), _text(schedule))
    raise ValueError(f"unknown format {fmt!r}")
