"""
SEVRP-T Network Model
=====================

This module defines the immutable problem instance:
- Nodes (depot, customers, charging stations) with Euclidean coordinates
- Policy parameters (battery capacity, threshold, goal, search settings)
- Dense distance, travel-time and nominal-energy matrices
- Validation that reports every violated invariant
"""

import math
from collections import Counter
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np
from scipy.spatial.distance import cdist

from ..charging import ChargingFunction, min_time_per_kwh

# Default battery capacity and policy fractions used throughout the experiments
DEFAULT_Q_MAX = 24.0
DEFAULT_THRESHOLD_FRACTION = 0.3
DEFAULT_GOAL_FRACTION = 0.8
DEFAULT_CONSUMPTION_RATE = 0.125


class NodeKind(str, Enum):
    DEPOT = "depot"
    CUSTOMER = "customer"
    STATION = "station"


@dataclass(frozen=True)
class Node:
    """A network node; technology is set for stations only."""

    id: int
    kind: NodeKind
    x: float
    y: float
    technology: str = None
    service_time: float = 0.0


@dataclass(frozen=True)
class PolicyParams:
    """
    Threshold policy and search parameters.

    Energies are in kWh, speed in length units per time unit, time limits
    in seconds.
    """

    q_max: float = DEFAULT_Q_MAX
    q_threshold: float = DEFAULT_THRESHOLD_FRACTION * DEFAULT_Q_MAX
    q_goal: float = DEFAULT_GOAL_FRACTION * DEFAULT_Q_MAX
    consumption_rate: float = DEFAULT_CONSUMPTION_RATE
    speed: float = 1.0
    gamma: float = 1.0
    i_max: int = 2000
    seed: int = 0
    use_ndcs: bool = True
    sp_time_limit: float = 600.0
    time_limit: float = 10800.0
    include_service_time: bool = False

    @classmethod
    def from_fractions(cls, q_max=DEFAULT_Q_MAX, threshold=DEFAULT_THRESHOLD_FRACTION,
                       goal=DEFAULT_GOAL_FRACTION, **kwargs):
        """Build parameters with Q^T and Q^G given as fractions of Q^max."""
        return cls(q_max=q_max, q_threshold=threshold * q_max, q_goal=goal * q_max, **kwargs)

    def diagnostics(self):
        problems = []
        if not (0.0 <= self.q_threshold < self.q_goal < self.q_max):
            problems.append(
                f"parameter ordering violated: need 0 <= Q^T < Q^G < Q^max, got "
                f"Q^T={self.q_threshold}, Q^G={self.q_goal}, Q^max={self.q_max}"
            )
        if not self.consumption_rate > 0:
            problems.append(f"consumption_rate must be positive, got {self.consumption_rate}")
        if not self.speed > 0:
            problems.append(f"speed must be positive, got {self.speed}")
        if not self.gamma >= 1:
            problems.append(f"gamma must be >= 1, got {self.gamma}")
        if not self.i_max >= 1:
            problems.append(f"i_max must be >= 1, got {self.i_max}")
        return problems


@dataclass(frozen=True)
class Instance:
    """
    Immutable SEVRP-T network.

    Node ids are matrix indices: the depot is node 0 and ids run
    contiguously. Matrices are computed once from coordinates and params.
    """

    nodes: tuple
    charging_functions: dict
    params: PolicyParams
    name: str = "unnamed"
    distance: np.ndarray = field(init=False, repr=False, compare=False)
    travel_time: np.ndarray = field(init=False, repr=False, compare=False)
    nominal_energy: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        nodes = tuple(sorted(self.nodes, key=lambda node: node.id))
        object.__setattr__(self, "nodes", nodes)
        coords = np.array([[node.x, node.y] for node in nodes], dtype=np.float64).reshape(-1, 2)
        distance = cdist(coords, coords)
        np.fill_diagonal(distance, 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            travel_time = distance / self.params.speed
        energy = self.params.consumption_rate * distance
        for matrix in (distance, travel_time, energy):
            matrix.setflags(write=False)
        object.__setattr__(self, "distance", distance)
        object.__setattr__(self, "travel_time", travel_time)
        object.__setattr__(self, "nominal_energy", energy)

    # Convenience views

    @property
    def size(self):
        return len(self.nodes)

    @property
    def depot(self):
        return 0

    @property
    def customers(self):
        return tuple(node.id for node in self.nodes if node.kind == NodeKind.CUSTOMER)

    @property
    def stations(self):
        return tuple(node.id for node in self.nodes if node.kind == NodeKind.STATION)

    @property
    def coords(self):
        return np.array([[node.x, node.y] for node in self.nodes], dtype=np.float64)

    def node(self, node_id):
        return self.nodes[node_id]

    def curve(self, station_id):
        """Charging function of a station node."""
        return self.charging_functions[self.nodes[station_id].technology]

    def nearest_station_distance(self):
        """
        Distance from every node to its closest charging station.

        Returns:
            np.ndarray: one entry per node (inf when there are no stations)
        """
        stations = list(self.stations)
        if not stations:
            return np.full(self.size, math.inf)
        return self.distance[:, stations].min(axis=1)

    def fastest_charge_time_per_kwh(self):
        """Smallest time-per-kWh over all curve segments of the instance."""
        return min_time_per_kwh(self.charging_functions.values())

    def with_params(self, **changes):
        """Copy of the instance with some policy parameters replaced."""
        return Instance(self.nodes, dict(self.charging_functions), replace(self.params, **changes), self.name)


def validate(instance):
    """
    Check every instance invariant.

    This method checks:
    1. Node ids are unique, contiguous and the depot is node 0
    2. Coordinates are finite
    3. Policy parameters are ordered and positive
    4. Every charging curve is valid and ends at Q^max
    5. Every station's technology has a curve

    Args:
        instance (Instance): the instance to check

    Returns:
        list: diagnostics, empty iff the instance is valid
    """
    problems = []
    ids = [node.id for node in instance.nodes]
    if len(set(ids)) != len(ids):
        dupes = sorted(i for i, count in Counter(ids).items() if count > 1)
        problems.append(f"duplicate node ids: {dupes}")
    elif ids != list(range(len(ids))):
        problems.append(f"node ids must run contiguously from 0, got {ids}")

    depots = [node.id for node in instance.nodes if node.kind == NodeKind.DEPOT]
    if len(depots) != 1:
        problems.append(f"exactly one depot required, found {len(depots)}")
    elif depots[0] != 0:
        problems.append(f"depot must have id 0, got {depots[0]}")

    for node in instance.nodes:
        if not (math.isfinite(node.x) and math.isfinite(node.y)):
            problems.append(f"node {node.id}: non-finite coordinates ({node.x}, {node.y})")
        if node.kind == NodeKind.STATION and node.technology not in instance.charging_functions:
            problems.append(f"station {node.id}: unknown technology {node.technology!r}")

    problems.extend(instance.params.diagnostics())

    for technology, curve in sorted(instance.charging_functions.items()):
        for problem in curve.diagnostics(instance.params.q_max):
            problems.append(f"charging function {technology!r}: {problem}")

    return problems
