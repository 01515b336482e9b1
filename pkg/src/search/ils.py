"""
Iterated Local Search
=====================

Route generator of the solver: descends from an initial solution, then
repeatedly perturbs the incumbent and descends again. Every descent result
feeds the route pool, which the set-partitioning stage recombines.
"""

import logging
import time
from dataclasses import dataclass, field

from .construction import initial_solution, perturb
from .settings import IMPROVEMENT_TOLERANCE, substream
from .solution import RoutePool
from .vnd import vnd

logger = logging.getLogger(__name__)


@dataclass
class IlsResult:
    """Incumbent, route pool and run statistics; unpacks as (best, pool)."""

    best: object
    pool: RoutePool
    iterations: int = 0
    elapsed: float = 0.0
    history: list = field(default_factory=list)

    def __iter__(self):
        return iter((self.best, self.pool))


def ils(instance, oracle, settings, rng_init=None, rng_perturb=None, pool=None):
    """
    Run iterated local search.

    This method:
    1. Builds the initial solution and descends from it (iteration 0)
    2. Perturbs the incumbent and descends again, i_max - 1 times or until
       the wall-clock limit
    3. Inserts every descent result into the pool
    4. Replaces the incumbent on strict improvement

    Args:
        instance (Instance): the network
        oracle (SearchOracle): route costs over the scenario set
        settings (SearchSettings): i_max, time limit, descent settings
        rng_init (np.random.Generator, optional): initial-solution stream
        rng_perturb (np.random.Generator, optional): perturbation stream
        pool (RoutePool, optional): pool to extend

    Returns:
        IlsResult: incumbent, pool, iterations run, incumbent history
    """
    rng_init = rng_init if rng_init is not None else substream(settings.seed, "initial-solution")
    rng_perturb = rng_perturb if rng_perturb is not None else substream(settings.seed, "perturbation")
    pool = pool if pool is not None else RoutePool()
    started = time.monotonic()

    best = vnd(initial_solution(instance, oracle, rng_init), oracle, settings)
    pool.add_solution(best)
    history = [best.objective]

    iteration = 1
    while iteration < settings.i_max:
        elapsed = time.monotonic() - started
        if elapsed >= settings.time_limit:
            logger.warning("time limit reached after %d iterations (%.1fs)", iteration, elapsed)
            break
        candidate = vnd(perturb(best, instance, oracle, rng_perturb), oracle, settings)
        pool.add_solution(candidate)
        if candidate.objective < best.objective - IMPROVEMENT_TOLERANCE:
            best = candidate
            logger.debug("iteration %d: new incumbent %.4f", iteration, best.objective)
        history.append(best.objective)
        iteration += 1
        if settings.log_every and iteration % settings.log_every == 0:
            logger.info("iteration %d | incumbent %.4f | pool %d | %.1fs",
                        iteration, best.objective, len(pool), time.monotonic() - started)

    elapsed = time.monotonic() - started
    logger.info("ils finished: %d iterations, incumbent %.4f, pool %d, %.1fs",
                iteration, best.objective, len(pool), elapsed)
    return IlsResult(best, pool, iteration, elapsed, history)
