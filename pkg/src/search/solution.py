"""
Solutions and Route Pool
========================

A solution is a partition of the customers into routes, each with its
expected duration. The pool collects every distinct route produced during
the search together with its best known duration.
"""

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Solution:
    """Routes (customer tuples) and their expected durations."""

    routes: tuple
    durations: tuple

    def __post_init__(self):
        object.__setattr__(self, "routes", tuple(tuple(r) for r in self.routes))
        object.__setattr__(self, "durations", tuple(float(t) for t in self.durations))

    @property
    def objective(self):
        return sum(self.durations)

    @property
    def feasible(self):
        return all(math.isfinite(t) for t in self.durations)

    def customers(self):
        return sorted(c for route in self.routes for c in route)

    def covers(self, customers):
        """True iff every customer appears in exactly one route."""
        return self.customers() == sorted(customers)

    def replace(self, indices, new_routes, new_durations):
        """
        Copy with the routes at `indices` replaced by new ones.

        New routes are appended after the untouched routes; empty routes are
        dropped.
        """
        drop = set(indices)
        routes = [r for k, r in enumerate(self.routes) if k not in drop]
        durations = [t for k, t in enumerate(self.durations) if k not in drop]
        for route, duration in zip(new_routes, new_durations):
            if route:
                routes.append(tuple(route))
                durations.append(duration)
        return Solution(tuple(routes), tuple(durations))


class RoutePool:
    """
    Deduplicated route store: customer sequence -> minimum known duration.

    Only feasible routes are stored. Insertion order is preserved, which
    keeps the set-partitioning input deterministic.
    """

    def __init__(self):
        self._entries = {}

    def add(self, route, duration):
        """Insert a route; returns True if the pool changed."""
        if not math.isfinite(duration):
            return False
        route = tuple(route)
        known = self._entries.get(route)
        if known is None or duration < known:
            self._entries[route] = float(duration)
            return True
        return False

    def add_solution(self, solution):
        """Insert every route of a solution; returns the number of changes."""
        return sum(self.add(r, t) for r, t in zip(solution.routes, solution.durations))

    def duration(self, route):
        return self._entries[tuple(route)]

    def items(self):
        return list(self._entries.items())

    def __contains__(self, route):
        return tuple(route) in self._entries

    def __len__(self):
        return len(self._entries)
