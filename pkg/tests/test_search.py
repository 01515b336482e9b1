"""
Test script for the route search
================================

Neighborhood enumeration, move filtering, VND, construction, perturbation,
ILS and the full ILS-SP pipeline.
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import math

import numpy as np
import pytest

from src.exceptions import UnservableInstanceError
from src.search import (
    DEFAULT_ORDER,
    FilterOutcome,
    Move,
    RoutePool,
    SearchOracle,
    SearchSettings,
    Solution,
    apply_move,
    enumerate_moves,
    filter_move,
    ils,
    initial_solution,
    perturb,
    removal_count_range,
    solve,
    substream,
    vnd,
)
from src.search import moves
from src.routing import RouteEvaluator
from src.scenario import generate_scenarios

ROUTES = ((1, 2, 3), (4, 5))

EXPECTED_COUNTS = {
    moves.INTER_1_0: 17,
    moves.INTER_1_1: 6,
    moves.INTER_2_0: 20,
    moves.INTER_2_1: 14,
    moves.INTER_2_2: 8,
    moves.INTRA_1_0: 8,
    moves.INTRA_1_1: 4,
    moves.INTRA_2_0: 7,
    moves.INTRA_2_1: 4,
    moves.INTRA_2_2: 0,
    moves.TWO_OPT: 10,
    moves.SEPARATE: 3,
}


def _settings(**changes):
    values = dict(i_max=4, time_limit=60.0, sp_time_limit=30.0, log_every=0)
    values.update(changes)
    return SearchSettings(**values)


@pytest.mark.parametrize("kind", DEFAULT_ORDER)
def test_neighborhood_sizes(kind):
    assert sum(1 for _ in enumerate_moves(kind, ROUTES)) == EXPECTED_COUNTS[kind]


@pytest.mark.parametrize("kind", DEFAULT_ORDER)
def test_moves_preserve_the_customer_set(kind):
    routes = ((1, 2, 3, 4), (5, 6, 7))
    for move in enumerate_moves(kind, routes):
        new = apply_move(move, routes)
        before = sorted(c for r in move.routes for c in routes[r])
        assert sorted(c for route in new for c in route) == before


def test_unknown_neighborhood():
    with pytest.raises(ValueError):
        list(enumerate_moves("3-opt", ROUTES))


def test_move_application_examples():
    assert apply_move(Move(moves.INTER_1_0, (0, 1), (0, 1)), ROUTES) == [(2, 3), (4, 1, 5)]
    assert apply_move(Move(moves.TWO_OPT, (0, 1), (1, 1)), ROUTES) == [(1, 5), (4, 2, 3)]
    assert apply_move(Move(moves.SEPARATE, (0,), (1,)), ROUTES) == [(1,), (2, 3)]
    assert apply_move(Move(moves.INTER_2_0, (0, 1), (0, 2), (True,)), ROUTES) == [(3,), (4, 5, 2, 1)]
    assert apply_move(Move(moves.INTRA_1_0, (0,), (0, 2)), ROUTES) == [(2, 3, 1)]
    assert apply_move(Move(moves.INTRA_2_1, (0,), (0, 3), (False,)), ((1, 2, 3, 4),)) == [(4, 3, 1, 2)]
    assert apply_move(Move(moves.INTRA_2_2, (0,), (0, 2), (False, True)), ((1, 2, 3, 4, 5),)) == [(4, 3, 1, 2, 5)]
    # emptied routes disappear
    assert apply_move(Move(moves.INTER_1_0, (0, 1), (0, 2)), ((1,), (4, 5))) == [(4, 5, 1)]


def test_route_pool_keeps_minimum_finite_duration():
    pool = RoutePool()
    assert pool.add((1, 2), 10.0)
    assert not pool.add((1, 2), 12.0)
    assert pool.add((1, 2), 9.0)
    assert not pool.add((3,), math.inf)
    assert pool.duration((1, 2)) == 9.0
    assert (3,) not in pool
    assert len(pool) == 1


def test_solution_replace_and_cover():
    solution = Solution(((1, 2), (3,)), (5.0, 2.0))
    changed = solution.replace((0,), [(2,), (1,)], [1.0, 1.5])
    assert changed.routes == ((3,), (2,), (1,))
    assert changed.objective == pytest.approx(4.5)
    assert changed.covers([1, 2, 3])
    assert not Solution(((1,),), (1.0,)).covers([1, 2])


def test_filter_stages(line_instance, nominal):
    oracle = SearchOracle(line_instance, nominal)
    # durations deliberately below the merged route's first-stage time
    solution = Solution(((3,), (1,)), (8.0, 10.0))
    merge = Move(moves.INTER_1_0, (1, 0), (0, 1))
    assert apply_move(merge, solution.routes) == [(3, 1)]
    assert filter_move(merge, solution, oracle, gamma=1.0) is FilterOutcome.REJECTED_STAGE1
    assert filter_move(merge, solution, oracle, gamma=2.0) is FilterOutcome.REJECTED_STAGE2
    assert filter_move(merge, solution, oracle, gamma=2.0, use_bounds=False) is FilterOutcome.CANDIDATE
    assert filter_move(merge, solution, oracle, gamma=math.inf, use_bounds=False) is FilterOutcome.CANDIDATE


def test_oracle_caches_durations(line_instance, nominal):
    oracle = SearchOracle(line_instance, nominal)
    assert oracle.duration((1,)) == pytest.approx(21.0)
    assert oracle.duration([1]) == pytest.approx(21.0)
    assert oracle.stats() == {"evaluations": 1, "cache_hits": 1}


def test_bounded_cache_forgets_old_routes(line_instance, nominal):
    oracle = SearchOracle(line_instance, nominal, cache_size=1)
    for route in ((1,), (3,), (1,)):
        oracle.duration(route)
    assert oracle.stats() == {"evaluations": 3, "cache_hits": 0}


def test_cache_can_be_disabled(line_instance, nominal):
    oracle = SearchOracle(line_instance, nominal, cache=False)
    assert oracle.duration((1,)) == oracle.duration((1,)) == pytest.approx(21.0)
    assert oracle.stats() == {"evaluations": 2, "cache_hits": 0}


def test_initial_solution_is_feasible_and_complete(grid_instance, grid_nominal):
    oracle = SearchOracle(grid_instance, grid_nominal)
    solution = initial_solution(grid_instance, oracle, substream(0, "initial-solution"))
    assert solution.feasible
    assert solution.covers(grid_instance.customers)
    for route, duration in zip(solution.routes, solution.durations):
        assert duration == pytest.approx(oracle.evaluator.duration(route))


def test_unservable_customer_is_reported(line_instance, nominal):
    # the detour point on the way home is too far from the station
    strict = line_instance.with_params(q_threshold=0.4)
    oracle = SearchOracle(strict, nominal)
    assert math.isinf(oracle.duration((1,)))
    with pytest.raises(UnservableInstanceError) as error:
        initial_solution(strict, oracle, substream(0, "initial-solution"))
    assert error.value.customers == [1]


def test_vnd_never_worsens(grid_instance, grid_nominal):
    oracle = SearchOracle(grid_instance, grid_nominal)
    start = initial_solution(grid_instance, oracle, substream(1, "initial-solution"))
    settings = _settings()
    result = vnd(start, oracle, settings)
    assert result.objective <= start.objective + 1e-9
    assert result.covers(grid_instance.customers)
    assert result.feasible


def test_vnd_with_filters_disabled_still_descends(grid_instance, grid_nominal):
    oracle = SearchOracle(grid_instance, grid_nominal)
    start = initial_solution(grid_instance, oracle, substream(1, "initial-solution"))
    settings = _settings(gamma=math.inf, use_bounds=False)
    assert settings.filters_disabled
    assert vnd(start, oracle, settings).objective <= start.objective + 1e-9


def test_vnd_without_filters_is_deterministic(grid_instance, grid_nominal):
    settings = _settings(gamma=math.inf, use_bounds=False)
    results = []
    for _ in range(2):
        oracle = SearchOracle(grid_instance, grid_nominal)
        start = initial_solution(grid_instance, oracle, substream(4, "initial-solution"))
        results.append(vnd(start, oracle, settings))
    assert results[0].routes == results[1].routes
    assert results[0].durations == results[1].durations


def test_removal_count_range():
    assert removal_count_range(3) == (3, 3)
    assert removal_count_range(10) == (5, 5)
    assert removal_count_range(40) == (5, 7)
    assert removal_count_range(100) == (5, 10)


def test_perturb_keeps_every_customer(grid_instance, grid_nominal):
    oracle = SearchOracle(grid_instance, grid_nominal)
    rng = substream(0, "perturbation")
    solution = vnd(initial_solution(grid_instance, oracle, substream(0, "initial-solution")), oracle, _settings())
    for _ in range(5):
        shaken = perturb(solution, grid_instance, oracle, rng)
        assert shaken.covers(grid_instance.customers)
        assert shaken.feasible


def test_ils_fills_the_pool(grid_instance, grid_nominal):
    oracle = SearchOracle(grid_instance, grid_nominal)
    result = ils(grid_instance, oracle, _settings(i_max=5))
    best, pool = result
    assert result.iterations == 5
    assert len(result.history) == 5
    assert result.history == sorted(result.history, reverse=True)
    for route in best.routes:
        assert route in pool


def test_pool_durations_match_fresh_evaluation(grid_instance):
    scenarios = generate_scenarios(grid_instance, "uniform", 3, seed=substream(5, "scenario-gen"))
    oracle = SearchOracle(grid_instance, scenarios)
    result = ils(grid_instance, oracle, _settings(i_max=3))
    fresh = RouteEvaluator(grid_instance, scenarios)
    assert len(result.pool) > 0
    for route, duration in result.pool.items():
        assert duration == pytest.approx(fresh.duration(route), abs=1e-9)


def test_solve_is_reproducible_and_sp_does_not_worsen(grid_instance):
    scenarios = generate_scenarios(grid_instance, "uniform", 4, seed=substream(0, "scenario-gen"))
    first = solve(grid_instance, scenarios, _settings(i_max=3))
    second = solve(grid_instance, scenarios, _settings(i_max=3))
    assert first.solution.routes == second.solution.routes
    assert first.objective == second.objective
    assert first.objective <= first.ils_best.objective + 1e-9
    assert first.solution.covers(grid_instance.customers)
    assert first.sp_proven


def test_solve_objective_matches_exact_evaluation(grid_instance):
    scenarios = generate_scenarios(grid_instance, "truncated-normal", 3, seed=substream(2, "scenario-gen"))
    result = solve(grid_instance, scenarios, _settings(i_max=2, use_ndcs=False))
    oracle = SearchOracle(grid_instance, scenarios)
    exact = sum(oracle.duration(route) for route in result.solution.routes)
    assert result.objective == pytest.approx(exact)


def test_substreams_are_independent():
    a = substream(7, "initial-solution").random(3)
    b = substream(7, "perturbation").random(3)
    again = substream(7, "initial-solution").random(3)
    assert np.array_equal(a, again)
    assert not np.array_equal(a, b)
