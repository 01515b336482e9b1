"""
Set-Partitioning Branch and Bound
=================================

Exact depth-first search over bitmask columns:
- branch on the lowest-index uncovered customer, trying its disjoint
  columns by ascending cost
- bound with the current cost plus, for every uncovered customer, its
  cheapest cost per covered customer over all columns
- start from the incumbent partition so a time-out still returns a
  feasible answer
"""

import logging
import math
import time
from dataclasses import dataclass

from ..exceptions import SetPartitionError
from .model import COST_TOLERANCE

logger = logging.getLogger(__name__)

# How many nodes are explored between clock checks
_CLOCK_INTERVAL = 1024


@dataclass(frozen=True)
class SpResult:
    """Selected column indices, their cost, and whether optimality is proven."""

    selection: tuple
    cost: float
    proven: bool
    nodes: int

    def routes(self, sp):
        return [sp.columns[k].route for k in self.selection]


class _Search:
    def __init__(self, sp, time_limit):
        self.sp = sp
        self.full = sp.full_mask
        self.deadline = time.monotonic() + time_limit if time_limit is not None else math.inf
        n = len(sp.customers)

        self.covering = [[] for _ in range(n)]
        amortized = [math.inf] * n
        for k, column in enumerate(sp.columns):
            size = bin(column.mask).count("1")
            share = column.cost / size
            for b in range(n):
                if column.mask >> b & 1:
                    self.covering[b].append(k)
                    amortized[b] = min(amortized[b], share)
        for b, options in enumerate(self.covering):
            if not options:
                raise SetPartitionError(f"customer {sp.customers[b]} has no covering column")
            options.sort(key=lambda k: (sp.columns[k].cost, k))
        self.amortized = amortized
        self.column_bound = [
            sum(amortized[b] for b in range(n) if column.mask >> b & 1) for column in sp.columns
        ]

        self.best_cost = math.inf
        self.best = None
        self.nodes = 0
        self.timed_out = False

    def seed(self, selection):
        mask, cost = 0, 0.0
        for k in selection:
            column = self.sp.columns[k]
            if mask & column.mask:
                return
            mask |= column.mask
            cost += column.cost
        if mask == self.full:
            self.best_cost, self.best = cost, tuple(selection)

    def run(self):
        self._dfs(0, 0.0, sum(self.amortized), [])

    def _dfs(self, covered, cost, remaining_bound, chosen):
        self.nodes += 1
        if self.nodes % _CLOCK_INTERVAL == 0 and time.monotonic() > self.deadline:
            self.timed_out = True
        if self.timed_out:
            return
        if covered == self.full:
            if cost < self.best_cost - COST_TOLERANCE:
                self.best_cost, self.best = cost, tuple(chosen)
            return
        uncovered = self.full & ~covered
        b = (uncovered & -uncovered).bit_length() - 1
        for k in self.covering[b]:
            column = self.sp.columns[k]
            if column.mask & covered:
                continue
            new_cost = cost + column.cost
            rest = remaining_bound - self.column_bound[k]
            if new_cost + rest >= self.best_cost - COST_TOLERANCE:
                continue
            chosen.append(k)
            self._dfs(covered | column.mask, new_cost, rest, chosen)
            chosen.pop()
            if self.timed_out:
                return


def solve_sp(sp, time_limit=None):
    """
    Minimum-cost exact cover of the customers by the columns.

    Args:
        sp (SpInstance): instance to solve
        time_limit (float, optional): seconds; None means unlimited

    Returns:
        SpResult: optimal selection, or the best one found when the time
        limit expires (proven=False)
    """
    search = _Search(sp, time_limit)
    if sp.incumbent:
        search.seed(sp.incumbent)
    search.run()
    if search.best is None:
        raise SetPartitionError("no exact cover exists")
    selection = tuple(sorted(search.best))
    proven = not search.timed_out
    if not proven:
        logger.warning("set partitioning stopped at the time limit after %d nodes", search.nodes)
    logger.info("set partitioning: cost %.4f with %d routes (%d nodes, proven=%s)",
                search.best_cost, len(selection), search.nodes, proven)
    return SpResult(selection, search.best_cost, proven, search.nodes)
