"""
Test script for fixed-route evaluation
======================================

Recourse walks, detour options, candidate stations and lower bounds on
hand-checkable networks.
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import json
import math
from dataclasses import replace
from itertools import permutations, product

import numpy as np
import pytest

from src.charging import ChargingFunction, time_at_soc
from src.exceptions import InstanceError
from src.instance import Node, NodeKind, build_instance
from src.routing import (
    Route,
    RouteEvaluator,
    detour_option_time,
    evaluate_route,
    evaluation_to_dict,
    lower_bound_route,
    point_segment_distance,
    precompute_ndcs,
    prop2_bound,
    write_route_report,
)
from src.scenario import ScenarioSet

from conftest import FAST, SLOW, make_params


def _expected_three_then_one():
    """Duration of route (3, 1) on the line network, computed by hand."""
    d31 = math.hypot(10.0, 4.0)
    z = 8.0 / d31
    point = (10.0 * z, 4.0 * (1.0 - z))
    ell = math.hypot(point[0] - 5.0, point[1])
    arrival = 4.0 - ell
    charge = 5.5 - arrival / 4.0
    return 4.0 + (d31 * z + ell + charge + 5.0) + 10.0


def test_route_without_detour(line_instance, nominal):
    evaluation = evaluate_route((3,), line_instance, nominal)
    assert evaluation.expected_duration == pytest.approx(8.0)
    trace = evaluation.traces[0]
    assert trace.events == ()
    assert trace.departure_soc == pytest.approx((16.0, 12.0))
    assert trace.arrival_soc == pytest.approx((12.0, 8.0))


def test_final_arc_detour_charges_only_to_reach_home(line_instance, nominal):
    evaluation = evaluate_route((1,), line_instance, nominal)
    assert evaluation.expected_duration == pytest.approx(21.0)
    (event,) = evaluation.traces[0].events
    assert event.arc == (1, 0)
    assert event.station == 2
    assert event.z == pytest.approx(0.2)
    assert event.detour_point == pytest.approx((8.0, 0.0))
    assert event.distance == pytest.approx(3.0)
    assert event.soc_at_station == pytest.approx(1.0)
    assert event.soc_leaving_station == pytest.approx(5.0)
    assert event.charge_time == pytest.approx(1.0)
    assert event.time == pytest.approx(11.0)
    assert evaluation.traces[0].arrival_soc[-1] == pytest.approx(0.0)


def test_inner_arc_detour_reaches_next_customer_at_goal(line_instance, nominal):
    evaluation = evaluate_route((3, 1), line_instance, nominal)
    assert evaluation.expected_duration == pytest.approx(_expected_three_then_one())
    trace = evaluation.traces[0]
    (event,) = trace.events
    assert event.arc == (3, 1)
    assert event.soc_leaving_station == pytest.approx(15.0)
    assert trace.arrival_soc[1] == pytest.approx(10.0)


def test_unreachable_goal_makes_route_infeasible(line_instance, nominal):
    # the charge target Q^G + e_23 exceeds Q^max
    evaluation = evaluate_route((1, 3), line_instance, nominal)
    assert math.isinf(evaluation.expected_duration)
    assert not evaluation.feasible
    assert not evaluation.traces[-1].feasible


def test_expected_duration_weights_scenarios(line_instance):
    nominal = line_instance.nominal_energy
    scenarios = ScenarioSet(np.stack([nominal, 0.8 * nominal]), [0.5, 0.5])
    evaluation = evaluate_route((1,), line_instance, scenarios)
    assert [t.duration for t in evaluation.traces] == pytest.approx([21.0, 20.0])
    assert evaluation.expected_duration == pytest.approx(20.5)
    assert RouteEvaluator(line_instance, scenarios).duration((1,)) == pytest.approx(20.5)


def test_service_time_is_added_when_enabled(line_instance, nominal):
    nodes = [replace(node, service_time=0.5) if node.id == 3 else node for node in line_instance.nodes]
    params = replace(line_instance.params, include_service_time=True)
    timed = build_instance(nodes, line_instance.charging_functions, params)
    assert evaluate_route((3,), timed, nominal).expected_duration == pytest.approx(8.5)
    plain = build_instance(nodes, line_instance.charging_functions, line_instance.params)
    assert evaluate_route((3,), plain, nominal).expected_duration == pytest.approx(8.0)


def test_invalid_routes_are_rejected(line_instance, nominal):
    with pytest.raises(InstanceError):
        evaluate_route((), line_instance, nominal)
    with pytest.raises(InstanceError):
        evaluate_route((1, 2), line_instance, nominal)
    with pytest.raises(InstanceError):
        evaluate_route((3, 3), line_instance, nominal)
    assert Route((1, 3)).arcs() == [(0, 1), (1, 3), (3, 0)]


def test_scenario_size_must_match_instance(line_instance):
    with pytest.raises(InstanceError):
        RouteEvaluator(line_instance, ScenarioSet.singleton(np.zeros((3, 3))))


def test_detour_option_time(line_instance):
    option = detour_option_time(line_instance, 1, 0, 6.0, 2, line_instance.nominal_energy, final=True)
    time, event = option
    assert time == pytest.approx(11.0)
    assert event.station == 2
    assert detour_option_time(line_instance, 1, 3, 6.0, 2, line_instance.nominal_energy) is None


def test_report_writes_inf_for_infeasible_routes(line_instance, nominal, tmp_path):
    evaluation = evaluate_route((1, 3), line_instance, nominal)
    document = evaluation_to_dict(evaluation)
    assert document["expected_duration"] == "inf"
    assert document["feasible"] is False
    path = tmp_path / "route.json"
    write_route_report(evaluate_route((1,), line_instance, nominal), path)
    saved = json.loads(path.read_text())
    assert saved["expected_duration"] == pytest.approx(21.0)
    assert saved["traces"][0]["events"][0]["station"] == 2


def test_point_segment_distance():
    assert point_segment_distance((0, 1), (-1, 0), (1, 0)) == pytest.approx(1.0)
    assert point_segment_distance((3, 0), (-1, 0), (1, 0)) == pytest.approx(2.0)
    assert point_segment_distance((3, 4), (0, 0), (0, 0)) == pytest.approx(5.0)


def test_prop2_and_route_bounds(line_instance, nominal):
    assert prop2_bound(1, 0, line_instance) == pytest.approx(10.0)
    assert lower_bound_route((1,), line_instance, nominal) == pytest.approx(20.25)


def test_lower_bound_never_exceeds_nominal_duration(grid_instance, grid_nominal):
    evaluator = RouteEvaluator(grid_instance, grid_nominal)
    for route in permutations(grid_instance.customers, 4):
        assert evaluator.lower_bound(route) <= evaluator.duration(route) + 1e-9


def test_ndcs_drops_stations_that_cannot_serve_the_arc(line_instance, nominal):
    table = precompute_ndcs(line_instance)
    assert table.get(1, 3) == ()
    assert table.get(3, 1) == (2,)
    assert table.get(1, 0) == (2,)
    with_table = evaluate_route((3, 1), line_instance, nominal, ndcs=table)
    assert with_table.expected_duration == pytest.approx(_expected_three_then_one())


def test_ndcs_drops_dominated_station_of_the_same_technology():
    nodes = [
        Node(0, NodeKind.DEPOT, 0.0, 0.0),
        Node(1, NodeKind.CUSTOMER, 10.0, 0.0),
        Node(2, NodeKind.STATION, 5.0, 0.0, technology="fast"),
        Node(3, NodeKind.STATION, 5.0, 8.0, technology="fast"),
    ]
    instance = build_instance(nodes, {"fast": ChargingFunction(FAST)}, make_params(consumption_rate=0.25))
    table = precompute_ndcs(instance)
    assert table.get(0, 1) == (2,)
    assert table.get(1, 0) == (2,)


def _random_curve(rng, q_max=16.0):
    """Concave curve through (0, 0) with three segments ending at q_max."""
    slopes = np.sort(rng.uniform(1.0, 8.0, 3))[::-1]
    socs = np.concatenate([[0.0], np.sort(rng.uniform(1.0, q_max - 1.0, 2)), [q_max]])
    times = np.concatenate([[0.0], np.cumsum(np.diff(socs) / slopes)])
    return ChargingFunction(tuple(zip(times, socs)))


def _random_instance(rng, customers, stations, technologies=3, span=10.0, rate=0.6):
    nodes = [Node(0, NodeKind.DEPOT, 0.0, 0.0)]
    for _ in range(customers):
        x, y = rng.uniform(-span, span, 2)
        nodes.append(Node(len(nodes), NodeKind.CUSTOMER, x, y))
    for _ in range(stations):
        x, y = rng.uniform(-span, span, 2)
        technology = f"t{rng.integers(technologies)}"
        nodes.append(Node(len(nodes), NodeKind.STATION, x, y, technology=technology))
    curves = {f"t{t}": _random_curve(rng) for t in range(technologies)}
    return build_instance(nodes, curves, make_params(consumption_rate=rate))


def _chosen_stations(evaluation):
    return [[event.station for event in trace.events] for trace in evaluation.traces]


def test_ndcs_keeps_a_slower_station_when_the_faster_one_is_out_of_reach():
    # the fast station lies on the arc but only near the depot end
    nodes = [
        Node(0, NodeKind.DEPOT, 0.0, 0.0),
        Node(1, NodeKind.CUSTOMER, 10.0, 0.0),
        Node(2, NodeKind.STATION, 8.0, 3.0, technology="slow"),
        Node(3, NodeKind.STATION, 2.0, 0.0, technology="fast"),
    ]
    curves = {"fast": ChargingFunction(FAST), "slow": ChargingFunction(SLOW)}
    instance = build_instance(nodes, curves, make_params())
    nominal = ScenarioSet.singleton(instance.nominal_energy)
    table = precompute_ndcs(instance)
    assert table.get(1, 0) == (2, 3)

    expected = 10.5 + 2.0 * math.sqrt(73.0)
    for ndcs in (None, table):
        evaluation = evaluate_route((1,), instance, nominal, ndcs=ndcs)
        assert evaluation.expected_duration == pytest.approx(expected)
        assert _chosen_stations(evaluation) == [[2]]


def test_ndcs_never_changes_nominal_evaluation():
    rng = np.random.default_rng(11)
    for _ in range(6):
        instance = _random_instance(rng, customers=5, stations=4)
        nominal = ScenarioSet.singleton(instance.nominal_energy)
        table = precompute_ndcs(instance)
        for length in (1, 2, 3):
            for route in permutations(instance.customers, length):
                full = evaluate_route(route, instance, nominal)
                pruned = evaluate_route(route, instance, nominal, ndcs=table)
                if math.isinf(full.expected_duration):
                    assert math.isinf(pruned.expected_duration)
                    continue
                assert pruned.expected_duration == pytest.approx(full.expected_duration, abs=1e-9)
                assert _chosen_stations(pruned) == _chosen_stations(full)


def _two_station_arc(curve):
    nodes = [
        Node(0, NodeKind.DEPOT, 0.0, 0.0),
        Node(1, NodeKind.CUSTOMER, 10.0, 0.0),
        Node(2, NodeKind.STATION, 7.0, 0.5, technology="only"),
        Node(3, NodeKind.STATION, 9.0, -1.0, technology="only"),
    ]
    instance = build_instance(nodes, {"only": ChargingFunction(curve)}, make_params())
    return RouteEvaluator(instance, ScenarioSet.singleton(instance.nominal_energy)), instance


def test_longer_detour_can_be_quicker_on_a_flat_curve():
    evaluator, instance = _two_station_arc(((0.0, 0.0), (2.0, 8.0), (18.0, 16.0)))
    near = instance.distance[2, 1] + math.hypot(1.0, 0.5)
    far = instance.distance[3, 1] + math.hypot(3.0, 1.0)
    assert near < far

    # leaving with 10 kWh puts the detour point at (6, 0)
    station, option = evaluator.best_detour(0, 0, 1, 10.0)
    assert station == 3
    other = evaluator.detour_option(0, 0, 1, 10.0, 2)
    assert other[0] - option[0] == pytest.approx(2.326, abs=1e-3)


def test_shorter_detour_wins_on_a_steep_curve():
    evaluator, _ = _two_station_arc(((0.0, 0.0), (2.0, 8.0), (4.1, 16.0)))
    station, option = evaluator.best_detour(0, 0, 1, 10.0)
    assert station == 2
    other = evaluator.detour_option(0, 0, 1, 10.0, 3)
    assert option[0] - other[0] == pytest.approx(-0.501, abs=1e-3)


def _walk_with_choices(instance, energy, customers, choices):
    """Route duration when every triggered arc uses the station given for it."""
    params = instance.params
    coords = [(node.x, node.y) for node in instance.nodes]
    nodes = (0,) + tuple(customers) + (0,)
    soc, total = params.q_max, 0.0
    for position, (i, j) in enumerate(zip(nodes[:-1], nodes[1:])):
        final = j == 0 and position == len(nodes) - 2
        e, d, t = energy[i, j], instance.distance[i, j], instance.travel_time[i, j]
        if (soc >= e) if final else (soc - e > params.q_threshold):
            soc -= e
            total += t
            continue
        k = choices[position]
        z = min(1.0, max(0.0, (soc - params.q_threshold) / e)) if e > 0 else 0.0
        point = np.array(coords[i]) * (1.0 - z) + np.array(coords[j]) * z
        ell = float(np.linalg.norm(point - np.array(coords[k])))
        arrival = params.q_threshold - (e / d if d > 0 else 0.0) * ell
        target = max(arrival, energy[k, j]) if final else params.q_goal + energy[k, j]
        if arrival < 0.0 or target > params.q_max:
            return math.inf
        curve = instance.curve(k)
        charge = time_at_soc(curve, target) - time_at_soc(curve, arrival)
        total += t * z + ell / params.speed + charge + instance.travel_time[k, j]
        soc = target - energy[k, j]
    return total


def test_evaluation_matches_exhaustive_station_choice():
    rng = np.random.default_rng(5)
    for customers, stations in ((1, 2), (2, 1)) * 4:
        instance = _random_instance(rng, customers, stations, technologies=2, span=6.0, rate=1.0)
        nominal = instance.nominal_energy
        energy = np.stack([nominal * rng.uniform(0.8, 1.2, nominal.shape) for _ in range(3)])
        scenarios = ScenarioSet(energy, np.full(3, 1.0 / 3.0))
        evaluator = RouteEvaluator(instance, scenarios)
        for route in permutations(instance.customers):
            for s in range(len(scenarios)):
                exhaustive = min(
                    _walk_with_choices(instance, energy[s], route, choices)
                    for choices in product(instance.stations, repeat=len(route) + 1)
                )
                walked = evaluator.scenario_trace(s, route, keep_traces=False)
                if math.isinf(exhaustive):
                    assert math.isinf(walked)
                else:
                    assert walked == pytest.approx(exhaustive, abs=1e-9)


def test_detours_never_shorten_a_scenario(grid_instance):
    rng = np.random.default_rng(3)
    nominal = grid_instance.nominal_energy
    energy = np.stack([nominal * rng.uniform(0.7, 1.5, nominal.shape) for _ in range(4)])
    evaluator = RouteEvaluator(grid_instance, ScenarioSet(energy, np.full(4, 0.25)))
    for route in permutations(grid_instance.customers, 3):
        floor = evaluator.first_stage_time(route)
        for s in range(4):
            walked = evaluator.scenario_trace(s, route, keep_traces=False)
            assert walked >= floor - 1e-9
