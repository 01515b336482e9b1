"""
Shared fixtures for the solver tests
====================================

Two small hand-checkable networks:
- line: depot, two customers and one station on the x axis between the
  depot and the far customer
- grid: six customers around the depot with a fast and a slow station
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from src.charging import ChargingFunction
from src.instance import Node, NodeKind, PolicyParams, build_instance
from src.scenario import ScenarioSet


FAST = ((0.0, 0.0), (2.0, 8.0), (6.0, 16.0))
SLOW = ((0.0, 0.0), (4.0, 8.0), (12.0, 16.0))


def make_params(**changes):
    values = dict(q_max=16.0, q_threshold=4.0, q_goal=10.0, consumption_rate=1.0, speed=1.0)
    values.update(changes)
    return PolicyParams(**values)


@pytest.fixture
def fast_curve():
    return ChargingFunction(FAST)


@pytest.fixture
def slow_curve():
    return ChargingFunction(SLOW)


@pytest.fixture
def line_instance():
    nodes = [
        Node(0, NodeKind.DEPOT, 0.0, 0.0),
        Node(1, NodeKind.CUSTOMER, 10.0, 0.0),
        Node(2, NodeKind.STATION, 5.0, 0.0, technology="fast"),
        Node(3, NodeKind.CUSTOMER, 0.0, 4.0),
    ]
    return build_instance(nodes, {"fast": ChargingFunction(FAST)}, make_params(), name="line")


@pytest.fixture
def grid_instance():
    customers = [(4.0, 0.0), (4.0, 4.0), (0.0, 4.0), (-4.0, 4.0), (-4.0, 0.0), (-4.0, -4.0)]
    nodes = [Node(0, NodeKind.DEPOT, 0.0, 0.0)]
    nodes += [Node(k + 1, NodeKind.CUSTOMER, x, y) for k, (x, y) in enumerate(customers)]
    nodes += [
        Node(7, NodeKind.STATION, 2.0, 2.0, technology="fast"),
        Node(8, NodeKind.STATION, -2.0, -2.0, technology="slow"),
    ]
    curves = {"fast": ChargingFunction(FAST), "slow": ChargingFunction(SLOW)}
    return build_instance(nodes, curves, make_params(), name="grid")


@pytest.fixture
def nominal(line_instance):
    return ScenarioSet.singleton(line_instance.nominal_energy)


@pytest.fixture
def grid_nominal(grid_instance):
    return ScenarioSet.singleton(grid_instance.nominal_energy)
