"""
Variable Neighborhood Descent
=============================

Explores the neighborhoods in order. Within a neighborhood every move is
screened by two cheap tests before the exact evaluation:
1. first-stage travel time of the new routes against gamma times the
   expected duration of the routes the move touches
2. lower bound of the new routes under the mean scenario against the same
   duration

The best improving move of the neighborhood is applied (lowest enumeration
index on ties) and the descent restarts at the first neighborhood. The
descent ends when the last neighborhood yields no improvement.
"""

import logging
import math
from enum import Enum

from .moves import apply_move, enumerate_moves
from .settings import IMPROVEMENT_TOLERANCE

logger = logging.getLogger(__name__)


class FilterOutcome(str, Enum):
    REJECTED_STAGE1 = "rejected-stage1"
    REJECTED_STAGE2 = "rejected-stage2"
    CANDIDATE = "candidate"


def filter_move(move, solution, oracle, gamma=1.0, use_bounds=True, new_routes=None):
    """
    Screen a move before exact evaluation.

    Args:
        move (Move): move to screen
        solution (Solution): current solution
        oracle (SearchOracle): cost provider (mean-scenario bounds)
        gamma (float): stage-1 factor, >= 1; inf disables stage 1
        use_bounds (bool): run stage 2
        new_routes (list, optional): routes produced by the move, if known

    Returns:
        FilterOutcome: stage that rejected the move, or CANDIDATE
    """
    if new_routes is None:
        new_routes = apply_move(move, solution.routes)
    current = sum(solution.durations[r] for r in move.routes)
    if not math.isinf(gamma):
        first_stage = sum(oracle.first_stage_time(r) for r in new_routes)
        if first_stage >= gamma * current:
            return FilterOutcome.REJECTED_STAGE1
    if use_bounds:
        bound = sum(oracle.lower_bound(r) for r in new_routes)
        if bound >= current:
            return FilterOutcome.REJECTED_STAGE2
    return FilterOutcome.CANDIDATE


def _explore(kind, solution, oracle, settings, counters):
    """Best (or first) improving move of one neighborhood."""
    best = None
    best_delta = IMPROVEMENT_TOLERANCE
    for move in enumerate_moves(kind, solution.routes):
        counters["moves"] += 1
        new_routes = apply_move(move, solution.routes)
        outcome = filter_move(move, solution, oracle, settings.gamma, settings.use_bounds, new_routes)
        if outcome is not FilterOutcome.CANDIDATE:
            counters[outcome.value] += 1
            continue
        durations = [oracle.duration(r) for r in new_routes]
        if not all(math.isfinite(t) for t in durations):
            continue
        delta = sum(solution.durations[r] for r in move.routes) - sum(durations)
        if delta > best_delta:
            best, best_delta = (move, new_routes, durations), delta
            if settings.first_improvement:
                break
    return best


def vnd(start, oracle, settings):
    """
    Descend from a feasible solution to a local optimum of all neighborhoods.

    Args:
        start (Solution): feasible starting solution
        oracle (SearchOracle): cost provider
        settings (SearchSettings): neighborhood order, gamma, filters,
            first-improvement switch

    Returns:
        Solution: objective <= start.objective
    """
    solution = start
    counters = {"moves": 0, "applied": 0,
                FilterOutcome.REJECTED_STAGE1.value: 0, FilterOutcome.REJECTED_STAGE2.value: 0}
    neighborhoods = settings.neighborhoods
    k = 0
    while k < len(neighborhoods):
        found = _explore(neighborhoods[k], solution, oracle, settings, counters)
        if found is None:
            k += 1
            continue
        move, new_routes, durations = found
        solution = solution.replace(move.routes, new_routes, durations)
        counters["applied"] += 1
        k = 0

    logger.debug("vnd: %.4f -> %.4f (%s)", start.objective, solution.objective, counters)
    return solution
