"""
Set-Partitioning Model
======================

Columns are pooled routes encoded as customer bitmasks. Building the model
keeps, for every customer subset, only its cheapest route.
"""

import logging
from dataclasses import dataclass
from pathlib import Path

from ..exceptions import SetPartitionError

logger = logging.getLogger(__name__)

# Absolute tolerance for cost comparisons
COST_TOLERANCE = 1e-9


@dataclass(frozen=True)
class SpColumn:
    """One candidate route: bitmask over customer positions, cost, sequence."""

    mask: int
    cost: float
    route: tuple


@dataclass(frozen=True)
class SpInstance:
    """
    Set-partitioning instance.

    customers[b] is the customer id of bit b. incumbent lists the column
    indices forming the ILS incumbent (a known feasible partition).
    """

    customers: tuple
    columns: tuple
    incumbent: tuple = ()

    @property
    def full_mask(self):
        return (1 << len(self.customers)) - 1


def build_sp(pool, incumbent):
    """
    Build the set-partitioning instance from the route pool.

    This method:
    1. Encodes every pooled route as a bitmask over the incumbent's customers
    2. Keeps the cheapest route per customer subset (the incumbent's route
       on cost ties)
    3. Records the incumbent's columns as a starting partition

    Args:
        pool (RoutePool): deduplicated routes with finite costs
        incumbent (Solution): best ILS solution

    Returns:
        SpInstance: deduplicated columns in pool order

    Raises:
        SetPartitionError: empty pool or uncovered customers
    """
    if len(pool) == 0:
        raise SetPartitionError("route pool is empty")
    customers = tuple(sorted(c for route in incumbent.routes for c in route))
    bit = {c: b for b, c in enumerate(customers)}
    incumbent_routes = {tuple(r): t for r, t in zip(incumbent.routes, incumbent.durations)}

    entries = list(pool.items())
    for route, cost in incumbent_routes.items():
        if route not in pool:
            logger.warning("incumbent route %s missing from pool; adding it", route)
            entries.append((route, cost))

    by_mask = {}
    for route, cost in entries:
        mask = 0
        for c in route:
            if c not in bit:
                raise SetPartitionError(f"pooled route {route} visits unknown customer {c}")
            mask |= 1 << bit[c]
        known = by_mask.get(mask)
        if known is None or cost < known.cost - COST_TOLERANCE or (
            abs(cost - known.cost) <= COST_TOLERANCE
            and route in incumbent_routes and known.route not in incumbent_routes
        ):
            by_mask[mask] = SpColumn(mask, float(cost), tuple(route))

    columns = tuple(by_mask.values())
    covered = 0
    for column in columns:
        covered |= column.mask
    full = (1 << len(customers)) - 1
    if covered != full:
        missing = [c for c in customers if not covered >> bit[c] & 1]
        raise SetPartitionError(f"customers not covered by any column: {missing}")

    # incumbent partition expressed with the cheapest column of each subset
    index = {column.mask: k for k, column in enumerate(columns)}
    start = []
    for route in incumbent.routes:
        mask = 0
        for c in route:
            mask |= 1 << bit[c]
        start.append(index[mask])

    logger.info("set partitioning: %d columns from %d pooled routes", len(columns), len(entries))
    return SpInstance(customers, columns, tuple(start))


def write_lp(sp, target):
    """
    Export the instance in CPLEX LP format.

    Variables x<k> select column k; one equality row per customer.

    Args:
        sp (SpInstance): instance to export
        target: path or text stream

    Returns:
        str: the LP text
    """
    lines = ["\\ set partitioning over pooled routes", "Minimize"]
    terms = " + ".join(f"{column.cost!r} x{k}" for k, column in enumerate(sp.columns))
    lines.append(f" obj: {terms}")
    lines.append("Subject To")
    for b, customer in enumerate(sp.customers):
        covering = [f"x{k}" for k, column in enumerate(sp.columns) if column.mask >> b & 1]
        lines.append(f" c{customer}: {' + '.join(covering)} = 1")
    lines.append("Binary")
    names = [f"x{k}" for k in range(len(sp.columns))]
    for start in range(0, len(names), 10):
        lines.append(" " + " ".join(names[start:start + 10]))
    lines.append("End")
    text = "\n".join(lines) + "\n"
    if isinstance(target, (str, Path)):
        Path(target).write_text(text, encoding="utf-8")
    else:
        target.write(text)
    return text
