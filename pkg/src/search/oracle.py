"""
Search Oracle
=============

Memoized route costs for the local search. Expected durations are a pure
function of the customer sequence, so the oracle caches them for the
lifetime of one search call together with the mean-scenario lower bounds
and first-stage travel times. Each cache keeps at most `cache_size`
routes, least recently used first out.
"""

import logging
from functools import lru_cache

from ..routing import RouteEvaluator
from ..scenario import ScenarioSet, mean_scenario

logger = logging.getLogger(__name__)

# Routes remembered per cache
CACHE_SIZE = 200_000


class SearchOracle:
    """
    Route cost provider shared by the search operators.

    Attributes:
        evaluator (RouteEvaluator): exact evaluator over the full scenario set
        bound_evaluator (RouteEvaluator): evaluator over the mean scenario,
            used for lower bounds
    """

    def __init__(self, instance, scenarios, ndcs=None, cache=True, cache_size=CACHE_SIZE):
        self.instance = instance
        self.scenarios = scenarios
        self.evaluator = RouteEvaluator(instance, scenarios, ndcs)
        self.bound_evaluator = RouteEvaluator(instance, ScenarioSet.singleton(mean_scenario(scenarios)))
        size = cache_size if cache else 0
        self._duration = lru_cache(maxsize=size)(self.evaluator.duration)
        self._lower_bound = lru_cache(maxsize=size)(self.bound_evaluator.lower_bound)
        self._first_stage = lru_cache(maxsize=size)(self.evaluator.first_stage_time)

    def duration(self, route):
        """Expected duration of a route (inf if infeasible)."""
        return self._duration(tuple(route))

    def lower_bound(self, route):
        """Lower bound under the mean scenario."""
        return self._lower_bound(tuple(route))

    def first_stage_time(self, route):
        return self._first_stage(tuple(route))

    def stats(self):
        info = self._duration.cache_info()
        return {"evaluations": info.misses, "cache_hits": info.hits}
