"""mod-p cohomology of finite groups via minimal free resolutions."""

import json

from ._cohoforge import (
    BudgetError,
    ParseError,
    RealizeError,
    cohomology_dims,
    dec_dims,
    group_order,
    presented_ring_dims,
    ring_fingerprint,
    scenario_ids,
)
from ._cohoforge import run_scenario as _run_scenario

__all__ = [
    "BudgetError",
    "ParseError",
    "RealizeError",
    "cohomology_dims",
    "dec_dims",
    "group_order",
    "presented_ring_dims",
    "ring_fingerprint",
    "run_scenario",
    "scenario_ids",
]


def run_scenario(scenario_id, **params):
    """Runs a scenario and returns its report as a dict."""
    return json.loads(_run_scenario(scenario_id, **params))
