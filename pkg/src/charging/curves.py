"""
Piecewise-Linear Charging Curves
================================

This module evaluates the concave charging curve of a station technology:
- forward: state of charge reached after charging for some time
- inverse: time needed to charge between two SoC levels

Curves are stored as breakpoint tuples and searched with bisect, so every
query is an exact per-segment formula (no root finding).
"""

from bisect import bisect_right
from dataclasses import dataclass, field

from ..exceptions import ChargingError

# Absolute slack for SoC and time comparisons against breakpoint limits
TOLERANCE = 1e-9


@dataclass(frozen=True)
class ChargingFunction:
    """
    Concave SoC-vs-time curve of one station technology.

    Breakpoints are (time, soc) pairs starting at (0, 0), both coordinates
    strictly increasing, with strictly decreasing segment slopes.
    """

    breakpoints: tuple
    times: tuple = field(init=False, repr=False)
    socs: tuple = field(init=False, repr=False)

    def __post_init__(self):
        points = tuple((float(c), float(a)) for c, a in self.breakpoints)
        object.__setattr__(self, "breakpoints", points)
        object.__setattr__(self, "times", tuple(c for c, _ in points))
        object.__setattr__(self, "socs", tuple(a for _, a in points))

    @property
    def q_max(self):
        """SoC at the last breakpoint."""
        return self.socs[-1]

    @property
    def full_charge_time(self):
        """Time to charge from empty to the last breakpoint."""
        return self.times[-1]

    def slopes(self):
        """Charge rate (energy per time) of every segment."""
        return [
            (self.socs[b] - self.socs[b - 1]) / (self.times[b] - self.times[b - 1])
            for b in range(1, len(self.times))
        ]

    def diagnostics(self, q_max=None):
        """
        Check the curve invariants.

        Args:
            q_max (float, optional): battery capacity the curve must end at

        Returns:
            list: human-readable descriptions of every violated invariant
        """
        problems = []
        if len(self.breakpoints) < 2:
            return ["needs at least two breakpoints"]
        if self.breakpoints[0] != (0.0, 0.0):
            problems.append(f"first breakpoint must be (0, 0), got {self.breakpoints[0]}")
        for b in range(1, len(self.times)):
            if self.times[b] <= self.times[b - 1] or self.socs[b] <= self.socs[b - 1]:
                problems.append(f"breakpoints not strictly increasing at index {b}")
                return problems
        slopes = self.slopes()
        for b in range(1, len(slopes)):
            if slopes[b] >= slopes[b - 1]:
                problems.append(f"not concave: slope of segment {b + 1} is not below segment {b}")
                break
        if q_max is not None and abs(self.q_max - q_max) > TOLERANCE:
            problems.append(f"last SoC {self.q_max} differs from Q^max {q_max}")
        return problems


@dataclass(frozen=True)
class ChargeQuery:
    """SoC on arrival at a station and SoC required on departure (kWh)."""

    q_in: float
    q_out: float


def soc_after(cf, t):
    """
    SoC reached after charging an empty battery for time t.

    Args:
        cf (ChargingFunction): station curve
        t (float): charging time from empty

    Returns:
        float: SoC in kWh, exactly a_b at breakpoint time c_b
    """
    if t < -TOLERANCE or t > cf.full_charge_time + TOLERANCE:
        raise ChargingError(f"time {t} outside curve domain [0, {cf.full_charge_time}]")
    t = min(max(t, 0.0), cf.full_charge_time)
    b = bisect_right(cf.times, t)
    if b >= len(cf.times):
        return cf.socs[-1]
    c0, c1 = cf.times[b - 1], cf.times[b]
    a0, a1 = cf.socs[b - 1], cf.socs[b]
    if t == c0:
        return a0
    return a0 + (a1 - a0) * (t - c0) / (c1 - c0)


def time_at_soc(cf, q):
    """
    Exact inverse of soc_after: time to charge from empty up to SoC q.

    Args:
        cf (ChargingFunction): station curve
        q (float): target SoC, 0 <= q <= Q^max of the curve

    Returns:
        float: charging time
    """
    if q < -TOLERANCE:
        raise ChargingError(f"negative SoC {q}")
    if q > cf.q_max + TOLERANCE:
        raise ChargingError(f"charge target {q} exceeds curve maximum {cf.q_max}")
    q = min(max(q, 0.0), cf.q_max)
    b = bisect_right(cf.socs, q)
    if b >= len(cf.socs):
        return cf.times[-1]
    a0, a1 = cf.socs[b - 1], cf.socs[b]
    c0, c1 = cf.times[b - 1], cf.times[b]
    if q == a0:
        return c0
    return c0 + (c1 - c0) * (q - a0) / (a1 - a0)


def inverse_charge_time(cf, query):
    """
    Time to charge from query.q_in up to query.q_out.

    The two SoC levels are mapped to curve times and subtracted, so the
    result is additive over intermediate levels and 0 for an empty charge.

    Args:
        cf (ChargingFunction): station curve
        query (ChargeQuery): arrival and departure SoC

    Returns:
        float: charging time
    """
    if query.q_in > query.q_out:
        raise ChargingError(f"q_in {query.q_in} above q_out {query.q_out}")
    if query.q_in == query.q_out:
        return 0.0
    return time_at_soc(cf, query.q_out) - time_at_soc(cf, query.q_in)


def charges_no_slower(cf, other):
    """
    Whether cf needs at most as much time as other for every SoC interval.

    Both curves are linear between the union of their SoC breakpoints, so
    comparing the time of each elementary interval is exact.

    Args:
        cf (ChargingFunction): candidate faster curve
        other (ChargingFunction): reference curve

    Returns:
        bool: True when inverse_charge_time(cf, q) <= inverse_charge_time(other, q)
        for every query q within both curves
    """
    top = min(cf.q_max, other.q_max)
    levels = sorted({q for q in cf.socs + other.socs if q <= top} | {top})
    for low, high in zip(levels[:-1], levels[1:]):
        mine = time_at_soc(cf, high) - time_at_soc(cf, low)
        theirs = time_at_soc(other, high) - time_at_soc(other, low)
        if mine > theirs + TOLERANCE:
            return False
    return True


def min_time_per_kwh(curves):
    """
    Smallest charging time per kWh over every segment of every curve.

    For a concave curve the first segment is the fastest, so this is a lower
    bound on the marginal charging time anywhere on any curve.

    Args:
        curves (iterable): ChargingFunction objects

    Returns:
        float: time units per kWh
    """
    rates = [max(cf.slopes()) for cf in curves]
    if not rates:
        raise ChargingError("no charging functions")
    return 1.0 / max(rates)
