"""
ILS-SP Pipeline
===============

End-to-end solve: candidate stations, route generation by iterated local
search, then exact recombination of the pooled routes by set partitioning.
"""

import logging
import time
from dataclasses import dataclass

from ..routing import precompute_ndcs
from ..set_partition import build_sp, solve_sp
from .ils import ils
from .oracle import SearchOracle
from .settings import SearchSettings
from .solution import Solution

logger = logging.getLogger(__name__)


@dataclass
class SolveResult:
    """Outcome of one ILS-SP run."""

    solution: Solution
    ils_best: Solution
    pool: object
    sp_proven: bool
    iterations: int
    elapsed: float
    stats: dict

    @property
    def objective(self):
        return self.solution.objective


def solve(instance, scenarios, settings=None, ndcs=None):
    """
    Solve an instance over a scenario set with ILS followed by set partitioning.

    This method:
    1. Precomputes the candidate-station table when use_ndcs is on
    2. Runs ILS to fill the route pool
    3. Solves set partitioning over the pool, starting from the ILS incumbent

    Args:
        instance (Instance): the network
        scenarios (ScenarioSet): energy scenarios
        settings (SearchSettings, optional): defaults from instance params
        ndcs (NdcsTable, optional): reuse a precomputed table

    Returns:
        SolveResult: final solution (objective <= ILS incumbent), pool, stats

    Raises:
        UnservableInstanceError: some customer cannot be served alone
    """
    settings = settings or SearchSettings.from_params(instance.params)
    started = time.monotonic()
    if settings.use_ndcs and ndcs is None:
        ndcs = precompute_ndcs(instance)
    oracle = SearchOracle(instance, scenarios, ndcs if settings.use_ndcs else None)

    result = ils(instance, oracle, settings)
    sp = build_sp(result.pool, result.best)
    sp_result = solve_sp(sp, settings.sp_time_limit)

    routes = sp_result.routes(sp)
    solution = Solution(tuple(routes), tuple(sp.columns[k].cost for k in sp_result.selection))
    if solution.objective > result.best.objective:
        solution = result.best

    elapsed = time.monotonic() - started
    stats = dict(oracle.stats(), pool_size=len(result.pool), sp_columns=len(sp.columns),
                 sp_nodes=sp_result.nodes)
    logger.info("solve %s: objective %.4f with %d routes (ils %.4f) in %.1fs",
                instance.name, solution.objective, len(solution.routes),
                result.best.objective, elapsed)
    return SolveResult(solution, result.best, result.pool, sp_result.proven,
                       result.iterations, elapsed, stats)
