"""
Fixed-Route Recourse Evaluation
===============================

This module computes the expected duration of a fixed customer sequence
under the threshold recharging policy:
- The vehicle leaves the depot with a full battery
- When an arc would take the SoC to Q^T or below, the vehicle detours at the
  point where the SoC equals Q^T, drives to a charging station, and charges
  so that it reaches the next customer with exactly Q^G
- On the arc back to the depot a detour happens only if the vehicle would
  otherwise run empty; it then charges just enough to get home

The cheapest station is chosen per arc and scenario (minimum time, then
lowest station id). A scenario without any feasible station makes the
whole route infeasible, reported as an infinite expected duration.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from ..charging import ChargeQuery, inverse_charge_time
from ..exceptions import InstanceError
from ..scenario import ScenarioSet
from .geometry import section_point

logger = logging.getLogger(__name__)

INFEASIBLE = math.inf


@dataclass(frozen=True)
class Route:
    """Customer sequence; the depot is implicit at both ends."""

    customers: tuple

    def __post_init__(self):
        customers = tuple(int(c) for c in self.customers)
        object.__setattr__(self, "customers", customers)

    def diagnostics(self, instance=None):
        problems = []
        if not self.customers:
            problems.append("route is empty")
        if len(set(self.customers)) != len(self.customers):
            problems.append(f"route repeats customers: {list(self.customers)}")
        if instance is not None:
            allowed = set(instance.customers)
            strangers = [c for c in self.customers if c not in allowed]
            if strangers:
                problems.append(f"route contains non-customer nodes: {strangers}")
        elif 0 in self.customers:
            problems.append("route contains the depot")
        return problems

    def arcs(self):
        """Ordered arcs depot -> customers -> depot."""
        nodes = (0,) + self.customers + (0,)
        return list(zip(nodes[:-1], nodes[1:]))

    def __len__(self):
        return len(self.customers)


@dataclass(frozen=True)
class DetourEvent:
    """One recharging detour on an arc in one scenario."""

    arc: tuple
    z: float
    detour_point: tuple
    station: int
    distance: float
    soc_at_station: float
    soc_leaving_station: float
    charge_time: float
    time: float


@dataclass(frozen=True)
class RecourseTrace:
    """Second-stage record of one scenario."""

    scenario: int
    departure_soc: tuple
    arrival_soc: tuple
    events: tuple
    duration: float

    @property
    def feasible(self):
        return math.isfinite(self.duration)


@dataclass(frozen=True)
class RouteEvaluation:
    """Expected duration of a route plus the per-scenario traces."""

    customers: tuple
    expected_duration: float
    traces: tuple = ()

    @property
    def feasible(self):
        return math.isfinite(self.expected_duration)


class RouteEvaluator:
    """
    Recourse evaluator bound to one instance and one scenario set.

    Matrices are converted to nested lists once so the per-arc loop runs on
    plain floats.
    """

    def __init__(self, instance, scenarios, ndcs=None):
        """
        Args:
            instance (Instance): the network
            scenarios (ScenarioSet): energy scenarios over the instance nodes
            ndcs (NdcsTable, optional): candidate stations per arc; all
                stations are tried when omitted
        """
        if scenarios.size != instance.size:
            raise InstanceError(
                f"scenario matrices cover {scenarios.size} nodes, instance has {instance.size}"
            )
        params = instance.params
        self.instance = instance
        self.scenarios = scenarios
        self.ndcs = ndcs
        self.q_max = params.q_max
        self.q_threshold = params.q_threshold
        self.q_goal = params.q_goal
        self.speed = params.speed

        self._coords = [(node.x, node.y) for node in instance.nodes]
        self._distance = instance.distance.tolist()
        self._time = instance.travel_time.tolist()
        self._energy = scenarios.energy.tolist()
        self._probabilities = scenarios.probabilities.tolist()
        self._stations = tuple(sorted(instance.stations))
        self._curves = {k: instance.curve(k) for k in self._stations}
        self._service = (
            [node.service_time for node in instance.nodes]
            if params.include_service_time else None
        )

        nearest = instance.nearest_station_distance()
        self._nearest_station = nearest.tolist()
        self._fastest = (
            instance.fastest_charge_time_per_kwh() if instance.charging_functions else 0.0
        )

    # Geometry and candidates

    def candidates(self, i, j):
        if self.ndcs is None:
            return self._stations
        return self.ndcs.get(i, j)

    def rate(self, s, i, j):
        """Energy per length unit of arc (i, j) in scenario s."""
        d = self._distance[i][j]
        return self._energy[s][i][j] / d if d > 0 else 0.0

    def service_time(self, customers):
        if self._service is None:
            return 0.0
        return sum(self._service[c] for c in customers)

    def first_stage_time(self, customers):
        """Travel time of the route without any detour (plus service if enabled)."""
        nodes = (0,) + tuple(customers) + (0,)
        total = sum(self._time[a][b] for a, b in zip(nodes[:-1], nodes[1:]))
        return total + self.service_time(customers)

    # Detour options

    def detour_option(self, s, i, j, soc, k, final=False):
        """
        Evaluate a detour to station k on arc (i, j) in scenario s.

        Args:
            s (int): scenario index
            i, j (int): arc endpoints
            soc (float): SoC when leaving i
            k (int): station node
            final (bool): j is the closing depot

        Returns:
            tuple or None: (time, z, detour_point, distance, arrival SoC,
            departure SoC, charge time), or None when infeasible. time
            replaces the arc's own travel time t_ij.
        """
        e = self._energy[s][i][j]
        d = self._distance[i][j]
        rate = e / d if d > 0 else 0.0
        z = (soc - self.q_threshold) / e if e > 0 else 0.0
        z = min(1.0, max(0.0, z))

        point = section_point(self._coords[i], self._coords[j], z)
        station = self._coords[k]
        ell = math.hypot(point[0] - station[0], point[1] - station[1])

        arrival = self.q_threshold - rate * ell
        if arrival < 0.0:
            return None
        e_kj = self._energy[s][k][j]
        target = max(arrival, e_kj) if final else self.q_goal + e_kj
        if target > self.q_max:
            return None

        charge_time = inverse_charge_time(self._curves[k], ChargeQuery(arrival, target))
        time = self._time[i][j] * z + ell / self.speed + charge_time + self._time[k][j]
        return time, z, point, ell, arrival, target, charge_time

    def best_detour(self, s, i, j, soc, final=False):
        """Cheapest feasible detour on an arc: (station, option) or None."""
        best_station, best = None, None
        for k in self.candidates(i, j):
            option = self.detour_option(s, i, j, soc, k, final)
            if option is not None and (best is None or option[0] < best[0]):
                best_station, best = k, option
        if best is None:
            return None
        return best_station, best

    # Route evaluation

    def triggered(self, s, i, j, soc, final):
        e = self._energy[s][i][j]
        if final:
            return soc < e
        return not soc - e > self.q_threshold

    def scenario_trace(self, s, customers, keep_traces=True):
        """
        Walk the route in one scenario.

        Returns:
            RecourseTrace or float: trace when keep_traces, else the duration
        """
        nodes = (0,) + tuple(customers) + (0,)
        last = len(nodes) - 2
        soc = self.q_max
        duration = 0.0
        departures, arrivals, events = [], [], []

        for position in range(len(nodes) - 1):
            i, j = nodes[position], nodes[position + 1]
            final = position == last
            if keep_traces:
                departures.append(soc)
            if not self.triggered(s, i, j, soc, final):
                soc -= self._energy[s][i][j]
                duration += self._time[i][j]
            else:
                chosen = self.best_detour(s, i, j, soc, final)
                if chosen is None:
                    duration = INFEASIBLE
                    break
                k, (time, z, point, ell, arrival, target, charge_time) = chosen
                duration += time
                soc = target - self._energy[s][k][j]
                if keep_traces:
                    events.append(DetourEvent(
                        arc=(i, j), z=z, detour_point=point, station=k, distance=ell,
                        soc_at_station=arrival, soc_leaving_station=target,
                        charge_time=charge_time, time=time,
                    ))
            if keep_traces:
                arrivals.append(soc)

        if math.isfinite(duration):
            duration += self.service_time(customers)
        if not keep_traces:
            return duration
        return RecourseTrace(s, tuple(departures), tuple(arrivals), tuple(events), duration)

    def duration(self, customers):
        """Expected duration only; inf as soon as one scenario is infeasible."""
        total = 0.0
        for s, p in enumerate(self._probabilities):
            value = self.scenario_trace(s, customers, keep_traces=False)
            if not math.isfinite(value):
                return INFEASIBLE
            total += p * value
        return total

    def evaluate(self, customers, keep_traces=True):
        """
        Expected recourse duration of a customer sequence.

        This method:
        1. Walks the route once per scenario starting from Q^max
        2. Passes arcs that keep the SoC above Q^T unchanged
        3. Picks the minimum-time feasible station on every triggered arc
        4. Stops at the first infeasible scenario

        Args:
            customers (sequence): customer ids in visiting order
            keep_traces (bool): record per-scenario traces

        Returns:
            RouteEvaluation: expected duration (inf if infeasible) and traces
        """
        customers = tuple(customers)
        if not keep_traces:
            return RouteEvaluation(customers, self.duration(customers))
        traces = []
        total = 0.0
        for s, p in enumerate(self._probabilities):
            trace = self.scenario_trace(s, customers, keep_traces=True)
            traces.append(trace)
            if not trace.feasible:
                logger.debug("route %s infeasible in scenario %d", customers, s)
                return RouteEvaluation(customers, INFEASIBLE, tuple(traces))
            total += p * trace.duration
        return RouteEvaluation(customers, total, tuple(traces))

    # Bounds

    def detour_length_bound(self, i, j):
        """Lower bound on any detour path length along arc (i, j)."""
        return max(self._distance[i][j], self._nearest_station[i] + self._nearest_station[j])

    def lower_bound(self, customers):
        """
        Lower bound on the expected duration.

        Triggered arcs cost the shortest possible detour path plus the
        charge needed from Q^T at the fastest rate of any curve.
        """
        nodes = (0,) + tuple(customers) + (0,)
        last = len(nodes) - 2
        total = 0.0
        for s, p in enumerate(self._probabilities):
            soc = self.q_max
            duration = 0.0
            for position in range(len(nodes) - 1):
                i, j = nodes[position], nodes[position + 1]
                final = position == last
                if not self.triggered(s, i, j, soc, final):
                    soc -= self._energy[s][i][j]
                    duration += self._time[i][j]
                    continue
                rate = self.rate(s, i, j)
                duration += self.detour_length_bound(i, j) / self.speed
                if final:
                    duration += self._fastest * max(0.0, rate * self._nearest_station[j] - self.q_threshold)
                else:
                    duration += self._fastest * (self.q_goal + rate * self._nearest_station[j] - self.q_threshold)
                    soc = self.q_goal
            total += p * duration
        return total + self.service_time(customers)


def _as_customers(route):
    return route.customers if isinstance(route, Route) else tuple(route)


def evaluate_route(route, instance, scenarios, ndcs=None, keep_traces=True):
    """
    Expected recourse duration of a fixed route.

    Args:
        route (Route or sequence): customer sequence
        instance (Instance): the network
        scenarios (ScenarioSet): energy scenarios
        ndcs (NdcsTable, optional): candidate stations per arc
        keep_traces (bool): record per-scenario traces

    Returns:
        RouteEvaluation: expected_duration is inf when infeasible
    """
    customers = _as_customers(route)
    problems = Route(customers).diagnostics(instance)
    if problems:
        raise InstanceError("invalid route", problems)
    return RouteEvaluator(instance, scenarios, ndcs).evaluate(customers, keep_traces)


def detour_option_time(instance, i, j, soc_at_i, station, energy, final=False):
    """
    Time of one detour option on arc (i, j) in a single scenario.

    Args:
        instance (Instance): the network
        i, j (int): arc endpoints
        soc_at_i (float): SoC when leaving i
        station (int): station node id
        energy (np.ndarray or Scenario): scenario energy matrix
        final (bool): j is the closing depot

    Returns:
        tuple or None: (time, DetourEvent), None when infeasible. time
        replaces t_ij in the route duration.
    """
    matrix = getattr(energy, "energy", energy)
    evaluator = RouteEvaluator(instance, ScenarioSet.singleton(np.asarray(matrix)))
    option = evaluator.detour_option(0, i, j, soc_at_i, station, final)
    if option is None:
        return None
    time, z, point, ell, arrival, target, charge_time = option
    event = DetourEvent(
        arc=(i, j), z=z, detour_point=point, station=station, distance=ell,
        soc_at_station=arrival, soc_leaving_station=target,
        charge_time=charge_time, time=time,
    )
    return time, event
