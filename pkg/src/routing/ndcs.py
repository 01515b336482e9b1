"""
Non-Dominated Charging Stations
===============================

Precomputes, for every ordered pair of depot/customer nodes, the stations
worth trying when a detour is triggered on that arc. A station is dropped
when:
- it cannot be reached from anywhere on the arc with Q^T under nominal
  consumption, or its charge target would exceed Q^max
- another station is feasible from every detour point where it is, and is
  strictly quicker there

The second rule has two sufficient tests. Distance dominance: the other
station is closer to every point of the arc and to the arc's head, and its
curve charges no slower. Time-bound dominance: the other station is
reachable from the whole arc and its worst-case detour time is below this
station's best-case detour time.

Nominal energy is used throughout, so with the nominal scenario the table
never changes a route's duration or chosen stations. Under sampled
scenarios a pruned station may still be the best choice; disable the table
to evaluate exactly.
"""

import logging
from dataclasses import dataclass

from ..charging import ChargeQuery, charges_no_slower, inverse_charge_time
from .geometry import min_dist_point_to_segment

logger = logging.getLogger(__name__)

# Margin that a dominating station must win by
MARGIN = 1e-9


@dataclass(frozen=True)
class NdcsTable:
    """Candidate station ids per ordered arc (i, j)."""

    candidates: dict

    def get(self, i, j):
        return self.candidates.get((i, j), ())


class _ArcView:
    """Nominal geometry and detour-time bounds of every station on one arc."""

    def __init__(self, instance, i, j, no_slower):
        self.instance = instance
        self.params = instance.params
        self.j = j
        self.no_slower = no_slower
        distance = instance.distance
        energy = instance.nominal_energy
        self.rate = energy[i, j] / distance[i, j] if distance[i, j] > 0 else 0.0
        stations = instance.stations
        self.technology = {k: instance.node(k).technology for k in stations}
        self.to_arc = {k: min_dist_point_to_segment(instance, k, i, j) for k in stations}
        self.far = {k: max(distance[i, k], distance[k, j]) for k in stations}
        self.head_energy = {k: energy[k, j] for k in stations}
        self.head_time = {k: instance.travel_time[k, j] for k in stations}

        self.serviceable = [k for k in stations if self.feasible_from(k, self.to_arc[k])]
        self.best = {k: self.detour_time(k, self.to_arc[k]) for k in self.serviceable}
        self.worst = {
            k: self.detour_time(k, self.far[k])
            for k in self.serviceable if self.feasible_from(k, self.far[k])
        }

    def target(self, k, arrival):
        if self.j == 0:
            return max(arrival, self.head_energy[k])
        return self.params.q_goal + self.head_energy[k]

    def feasible_from(self, k, ell):
        """Station k reachable over distance ell from the detour point with a feasible target."""
        arrival = self.params.q_threshold - self.rate * ell
        return arrival >= 0.0 and self.target(k, arrival) <= self.params.q_max

    def detour_time(self, k, ell):
        """Detour time over distance ell; increasing in ell."""
        arrival = self.params.q_threshold - self.rate * ell
        charge = inverse_charge_time(self.instance.curve(k), ChargeQuery(arrival, self.target(k, arrival)))
        return ell / self.params.speed + charge + self.head_time[k]

    def dominates(self, k2, k1):
        """Whether k2 beats k1 from every detour point where k1 is feasible."""
        if (
            self.far[k2] + MARGIN < self.to_arc[k1]
            and self.head_energy[k2] <= self.head_energy[k1]
            and self.head_time[k2] <= self.head_time[k1]
            and self.no_slower[self.technology[k2], self.technology[k1]]
        ):
            return True
        return k2 in self.worst and self.worst[k2] + MARGIN < self.best[k1]


def _arc_candidates(instance, i, j, no_slower):
    arc = _ArcView(instance, i, j, no_slower)
    stations = arc.serviceable
    kept = [
        k1 for k1 in stations
        if not any(arc.dominates(k2, k1) for k2 in stations if k2 != k1)
    ]
    return tuple(sorted(kept))


def precompute_ndcs(instance):
    """
    Build the candidate-station table for every arc between depot/customers.

    Args:
        instance (Instance): the network

    Returns:
        NdcsTable: candidate station ids per ordered arc, ascending
    """
    curves = instance.charging_functions
    no_slower = {
        (fast, slow): charges_no_slower(curves[fast], curves[slow])
        for fast in curves for slow in curves
    }
    nodes = (0,) + instance.customers
    candidates = {
        (i, j): _arc_candidates(instance, i, j, no_slower)
        for i in nodes for j in nodes if i != j
    }
    pruned = sum(len(instance.stations) - len(c) for c in candidates.values())
    logger.info("candidate stations: %d arcs, %d station options pruned", len(candidates), pruned)
    return NdcsTable(candidates)
