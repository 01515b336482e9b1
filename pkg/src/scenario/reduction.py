"""
Fast Forward Selection
======================

Greedy scenario reduction: scenarios are kept one at a time, each time the
one that minimizes the transport distance to the original distribution.
Deleted probability mass moves to the nearest kept scenario.

Distances are Euclidean between flattened arc-energy vectors. Ties are
broken by the lowest scenario index.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from ..exceptions import ScenarioError
from .sampling import ScenarioSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReducedScenarioSet:
    """Outcome of a reduction: kept parent indices, reweighted set, distance."""

    kept_indices: tuple
    reduced: ScenarioSet
    transport_distance: float


def scenario_distances(scenarios):
    """Pairwise Euclidean distance matrix between the scenarios of a set."""
    flat = scenarios.energy.reshape(len(scenarios), -1)
    return cdist(flat, flat)


def _nearest_kept(distances, kept):
    """For every scenario, the kept index at minimum distance (lowest index on ties)."""
    ordered = np.array(sorted(kept))
    return ordered[np.argmin(distances[:, ordered], axis=1)]


def transport_distance(parent, kept_indices, distances=None):
    """
    Minimum transport distance between a set and its restriction.

    Args:
        parent (ScenarioSet): original distribution
        kept_indices: indices of kept scenarios
        distances (np.ndarray, optional): precomputed scenario distances

    Returns:
        float: sum over deleted scenarios of p times the distance to the
        nearest kept scenario
    """
    kept = list(kept_indices)
    if distances is None:
        distances = scenario_distances(parent)
    deleted = np.setdiff1d(np.arange(len(parent)), kept)
    if len(deleted) == 0:
        return 0.0
    nearest = distances[np.ix_(deleted, kept)].min(axis=1)
    return float(parent.probabilities[deleted] @ nearest)


def redistribute(parent, kept_indices, distances=None):
    """
    Optimal redistribution: each kept scenario receives its own probability
    plus that of every deleted scenario closest to it.

    Returns:
        np.ndarray: probabilities aligned with kept_indices
    """
    kept = list(kept_indices)
    if distances is None:
        distances = scenario_distances(parent)
    owner = _nearest_kept(distances, kept)
    owner[kept] = kept
    position = {index: k for k, index in enumerate(kept)}
    probabilities = np.zeros(len(kept))
    for s, target in enumerate(owner):
        probabilities[position[int(target)]] += parent.probabilities[s]
    return probabilities


def reduce_ffs(scenarios, m):
    """
    Reduce a scenario set to m scenarios by fast forward selection.

    This method:
    1. Picks the scenario minimizing the probability-weighted distance to all others
    2. Updates the distance matrix so each column reflects the closest kept scenario
    3. Repeats on the remaining scenarios until m are kept
    4. Redistributes deleted probability and computes the transport distance

    Args:
        scenarios (ScenarioSet): parent set
        m (int): number of scenarios to keep, 1 <= m <= |S|

    Returns:
        ReducedScenarioSet: kept indices in selection order
    """
    total = len(scenarios)
    if int(m) != m or not 1 <= m <= total:
        raise ScenarioError(f"reduction size must be in [1, {total}], got {m}")
    m = int(m)
    distances = scenario_distances(scenarios)

    if m == total:
        kept = tuple(range(total))
        return ReducedScenarioSet(kept, scenarios, 0.0)

    p = scenarios.probabilities
    cost = distances.copy()
    remaining = list(range(total))
    kept = []
    for _ in range(m):
        if kept:
            cost = np.minimum(cost, cost[:, [kept[-1]]])
        candidates = np.array(remaining)
        z = p[candidates] @ cost[np.ix_(candidates, candidates)]
        chosen = int(candidates[np.argmin(z)])
        kept.append(chosen)
        remaining.remove(chosen)

    probabilities = redistribute(scenarios, kept, distances)
    distance = transport_distance(scenarios, kept, distances)
    logger.info("reduced %d scenarios to %d, transport distance %.6g", total, m, distance)
    return ReducedScenarioSet(tuple(kept), scenarios.subset(kept, probabilities), distance)
