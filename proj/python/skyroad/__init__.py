"""Skyroad generation, A* routing and FCFS corridor supervision."""

import json

from ._skyroad import (
    Graph,
    Network,
    SkyroadError,
    Trace,
    astar,
    graph_from_json,
    random_scenario_json,
    simulate,
    timing_scenario_json,
    verify_json,
)
from ._skyroad import generate as _generate

__all__ = [
    "Graph",
    "Network",
    "SkyroadError",
    "Trace",
    "astar",
    "generate",
    "graph_from_json",
    "random_scenario",
    "simulate",
    "timing_scenario",
    "verify",
]


def generate(landscape_path, config=None):
    return _generate(str(landscape_path), json.dumps(config) if config else "")


def verify(graph, trace):
    return json.loads(verify_json(graph, trace))


def timing_scenario(graph, seed=7, horizon=500):
    return json.loads(timing_scenario_json(graph, seed, horizon))


def random_scenario(seed, count, horizon):
    return json.loads(random_scenario_json(seed, count, horizon))
