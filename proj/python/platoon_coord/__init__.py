"""Hub-based cross-fleet truck platoon coordination.

Thin dict-level wrapper over the C++ extension. All heavy lifting
(scenario generation, the event-driven simulation, the exact cover
solvers) happens in native code; this layer just converts between
Python dicts and the JSON documents the core speaks.
"""

import json

from ._platoon_coord import (
    PlatoonError,
    default_params_json,
    generate_scenario_json,
    report_json,
    run_simulation_json,
    se33_network_json,
    shortest_path_nodes,
    solve_cover_json,
    verify_result_json,
)

__all__ = [
    "PlatoonError",
    "se33_network",
    "default_params",
    "generate_scenario",
    "run_simulation",
    "verify_result",
    "make_report",
    "shortest_path",
    "solve_exact_cover",
]

STRATEGIES = ("single", "pareto", "sysmax")


def se33_network():
    """The bundled 33-hub benchmark network as a dict."""
    return json.loads(se33_network_json())


def default_params():
    return json.loads(default_params_json())


def _dump(obj):
    return "" if obj is None else json.dumps(obj)


def generate_scenario(n_trucks, shares, seed, network=None, params=None):
    """Random scenario on `network` (default: the bundled one).

    Fleet sizes follow `shares` by largest remainder; identical seeds
    produce identical scenarios.
    """
    return json.loads(
        generate_scenario_json(n_trucks, list(shares), seed, _dump(network), _dump(params))
    )


def run_simulation(scenario, strategy="pareto", compare=True, include_timing=True):
    """Simulate `scenario` end to end under the given coordination strategy.

    With `compare` set, every coordination instance also records the
    programs of the other two strategies for side-by-side analysis.
    Pass include_timing=False for byte-reproducible output.
    """
    return json.loads(
        run_simulation_json(json.dumps(scenario), strategy, compare, include_timing)
    )


def verify_result(result):
    """Re-check a result against the simulator invariants.

    Returns a list of human-readable violations; empty means clean.
    """
    return verify_result_json(json.dumps(result))


def make_report(result, scenario):
    """Aggregate per-fleet profits, fuel reduction, and solve-time stats."""
    return json.loads(report_json(json.dumps(result), json.dumps(scenario)))


def shortest_path(origin, destination, network=None):
    """Node sequence of the shortest route, ties broken lexicographically."""
    return shortest_path_nodes(_dump(network), origin, destination)


def solve_exact_cover(instance):
    """Optimal selection for a cover program dict (see instance dumps)."""
    return solve_cover_json(json.dumps(instance))
