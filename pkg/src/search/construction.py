"""
Initial Solution and Perturbation
=================================

- initial_solution: nearest-neighbour tour over all customers, split
  greedily into feasible routes
- perturb: remove a cluster of geographically close customers and reinsert
  them one by one at their cheapest feasible position in another route
"""

import logging
import math

import numpy as np
from sklearn.neighbors import NearestNeighbors

from ..exceptions import UnservableInstanceError
from .solution import Solution

logger = logging.getLogger(__name__)

# Perturbation removes between MIN_REMOVED and ceil(sqrt(|I|)) customers
MIN_REMOVED = 5


def _nearest_neighbour_tour(instance, rng):
    distance = instance.distance
    unvisited = list(instance.customers)
    tour = []
    current = 0
    while unvisited:
        row = distance[current, unvisited]
        closest = np.flatnonzero(row == row.min())
        pick = unvisited[int(closest[0] if len(closest) == 1 else rng.choice(closest))]
        tour.append(pick)
        unvisited.remove(pick)
        current = pick
    return tour


def initial_solution(instance, oracle, rng):
    """
    Build a feasible starting solution.

    This method:
    1. Checks that every customer can be served on its own route
    2. Orders the customers by a nearest-neighbour walk from the depot
       (rng only breaks distance ties)
    3. Extends the current route while it stays feasible, otherwise starts
       a new one

    Args:
        instance (Instance): the network
        oracle (SearchOracle): route costs
        rng (np.random.Generator): tie-breaking stream

    Returns:
        Solution: feasible, every customer in exactly one route

    Raises:
        UnservableInstanceError: a single-customer route is infeasible
    """
    unservable = [c for c in instance.customers if not math.isfinite(oracle.duration((c,)))]
    if unservable:
        raise UnservableInstanceError(unservable)

    routes, durations = [], []
    current, current_duration = (), 0.0
    for customer in _nearest_neighbour_tour(instance, rng):
        extended = current + (customer,)
        duration = oracle.duration(extended)
        if math.isfinite(duration):
            current, current_duration = extended, duration
            continue
        routes.append(current)
        durations.append(current_duration)
        current, current_duration = (customer,), oracle.duration((customer,))
    if current:
        routes.append(current)
        durations.append(current_duration)

    solution = Solution(tuple(routes), tuple(durations))
    logger.info("initial solution: %d routes, objective %.4f", len(routes), solution.objective)
    return solution


def removal_count_range(n_customers):
    """Inclusive range [lo, hi] the number of removed customers is drawn from."""
    lo = min(n_customers, MIN_REMOVED)
    return lo, max(lo, math.ceil(math.sqrt(n_customers)))


def _route_cost(oracle, route):
    return oracle.duration(route) if route else 0.0


def perturb(best, instance, oracle, rng):
    """
    Shake a solution by relocating a cluster of nearby customers.

    This method:
    1. Draws the cluster size kappa and a random seed customer
    2. Removes the seed customer and its kappa - 1 nearest customers
    3. Reinserts them in random order at the position of minimum expected
       duration increase, never into the route a customer came from
    4. Opens a new route when no feasible insertion exists
    5. Splits any route left infeasible into single-customer routes

    Args:
        best (Solution): feasible incumbent
        instance (Instance): the network
        oracle (SearchOracle): route costs
        rng (np.random.Generator): perturbation stream

    Returns:
        Solution: covers every customer exactly once
    """
    customers = list(instance.customers)
    lo, hi = removal_count_range(len(customers))
    kappa = int(rng.integers(lo, hi + 1))
    seed_customer = customers[int(rng.integers(len(customers)))]

    coords = instance.coords
    finder = NearestNeighbors(n_neighbors=kappa, algorithm="brute").fit(coords[customers])
    _, neighbours = finder.kneighbors(coords[[seed_customer]])
    removed = [customers[k] for k in neighbours[0]]
    if seed_customer not in removed:
        removed[-1] = seed_customer
    removed_set = set(removed)

    # route ids survive the removals so "the route it left" stays well defined
    routes = {}
    origin = {}
    for route_id, route in enumerate(best.routes):
        kept = tuple(c for c in route if c not in removed_set)
        for c in route:
            if c in removed_set:
                origin[c] = route_id
        if kept:
            routes[route_id] = kept
    next_id = len(best.routes)

    for index in rng.permutation(len(removed)):
        customer = removed[int(index)]
        best_gain, best_place = math.inf, None
        for route_id, route in routes.items():
            if route_id == origin[customer]:
                continue
            old = _route_cost(oracle, route)
            for q in range(len(route) + 1):
                candidate = route[:q] + (customer,) + route[q:]
                new = oracle.duration(candidate)
                if not math.isfinite(new):
                    continue
                increase = new - old if math.isfinite(old) else new
                if increase < best_gain:
                    best_gain, best_place = increase, (route_id, candidate)
        if best_place is None:
            routes[next_id] = (customer,)
            next_id += 1
        else:
            route_id, candidate = best_place
            routes[route_id] = candidate

    final_routes, durations = [], []
    for route in routes.values():
        duration = oracle.duration(route)
        if math.isfinite(duration):
            final_routes.append(route)
            durations.append(duration)
            continue
        for c in route:
            final_routes.append((c,))
            durations.append(oracle.duration((c,)))

    logger.debug("perturb: removed %d customers around %d", kappa, seed_customer)
    return Solution(tuple(final_routes), tuple(durations))
