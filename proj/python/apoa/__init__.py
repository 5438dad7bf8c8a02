"""Pareto analysis of app portfolios: catalogs, solvers and decision reports."""

import json

from ._core import (
    ApoaError,
    Catalog,
    Front,
    battery_life_hours,
    filter_front,
    instance_id,
    instance_metrics,
    solve_exhaustive,
    solve_nsga2,
)
from . import _core

ApoaError.code = property(lambda self: self.args[0])

__all__ = [
    "ApoaError",
    "Catalog",
    "Front",
    "battery_life_hours",
    "compare",
    "contexts",
    "filter_front",
    "front_table",
    "instance_id",
    "instance_metrics",
    "instances",
    "position",
    "reference",
    "solve_exhaustive",
    "solve_nsga2",
]


def instances():
    return json.loads(_core.instances_json())


def contexts():
    return json.loads(_core.contexts_json())


def front_table(front, **view):
    """The front envelope (rows, trade-offs, stacked bars) as a dict."""
    return json.loads(front.to_json(**view))


def compare(front, catalog, solution=None):
    return json.loads(_core.compare_json(front, catalog, solution))


def reference(catalog, **battery):
    return json.loads(_core.reference_json(catalog, **battery))


def position(catalog, app_row, **battery):
    return json.loads(_core.position_json(catalog, app_row, **battery))
