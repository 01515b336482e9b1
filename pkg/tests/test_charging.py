"""
Test script for charging curves
===============================

Forward and inverse evaluation of piecewise-linear charging functions.
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from src.charging import (
    ChargeQuery,
    ChargingFunction,
    charges_no_slower,
    inverse_charge_time,
    min_time_per_kwh,
    soc_after,
    time_at_soc,
)
from src.exceptions import ChargingError


def test_soc_after_hits_breakpoints_exactly(fast_curve):
    assert soc_after(fast_curve, 0.0) == 0.0
    assert soc_after(fast_curve, 2.0) == 8.0
    assert soc_after(fast_curve, 6.0) == 16.0


def test_soc_after_interpolates_within_segments(fast_curve):
    assert soc_after(fast_curve, 1.0) == pytest.approx(4.0)
    assert soc_after(fast_curve, 4.0) == pytest.approx(12.0)


def test_time_at_soc_inverts_soc_after(fast_curve, slow_curve):
    for curve in (fast_curve, slow_curve):
        for t in (0.0, 0.5, 2.0, 3.7, curve.full_charge_time):
            assert time_at_soc(curve, soc_after(curve, t)) == pytest.approx(t)


def test_inverse_charge_time_values(fast_curve):
    assert inverse_charge_time(fast_curve, ChargeQuery(1.0, 5.0)) == pytest.approx(1.0)
    # crosses the breakpoint at 8 kWh
    assert inverse_charge_time(fast_curve, ChargeQuery(4.0, 12.0)) == pytest.approx(3.0)
    assert inverse_charge_time(fast_curve, ChargeQuery(7.5, 7.5)) == 0.0


def test_inverse_charge_time_is_additive(slow_curve):
    whole = inverse_charge_time(slow_curve, ChargeQuery(2.0, 14.0))
    parts = (inverse_charge_time(slow_curve, ChargeQuery(2.0, 9.0))
             + inverse_charge_time(slow_curve, ChargeQuery(9.0, 14.0)))
    assert whole == pytest.approx(parts)


def test_queries_outside_the_domain_raise(fast_curve):
    with pytest.raises(ChargingError):
        time_at_soc(fast_curve, 16.5)
    with pytest.raises(ChargingError):
        soc_after(fast_curve, 7.0)
    with pytest.raises(ChargingError):
        inverse_charge_time(fast_curve, ChargeQuery(10.0, 5.0))


def test_curve_properties(fast_curve):
    assert fast_curve.q_max == 16.0
    assert fast_curve.full_charge_time == 6.0
    assert fast_curve.slopes() == pytest.approx([4.0, 2.0])
    assert fast_curve.diagnostics(16.0) == []


def test_diagnostics_reports_broken_curves():
    convex = ChargingFunction(((0, 0), (2, 4), (4, 12)))
    assert any("concave" in p for p in convex.diagnostics())

    shifted = ChargingFunction(((1, 0), (2, 8)))
    assert any("(0, 0)" in p for p in shifted.diagnostics())

    flat = ChargingFunction(((0, 0), (2, 8), (3, 8)))
    assert any("increasing" in p for p in flat.diagnostics())

    assert ChargingFunction(((0, 0), (2, 8))).diagnostics(q_max=16.0)


def test_min_time_per_kwh_uses_fastest_segment(fast_curve, slow_curve):
    assert min_time_per_kwh([fast_curve, slow_curve]) == pytest.approx(0.25)
    with pytest.raises(ChargingError):
        min_time_per_kwh([])


def test_charges_no_slower_compares_every_soc_interval(fast_curve, slow_curve):
    assert charges_no_slower(fast_curve, slow_curve)
    assert not charges_no_slower(slow_curve, fast_curve)
    assert charges_no_slower(fast_curve, fast_curve)


def test_crossing_curves_are_not_ordered():
    quick_start = ChargingFunction(((0.0, 0.0), (1.0, 8.0), (9.0, 16.0)))
    steady = ChargingFunction(((0.0, 0.0), (2.0, 8.0), (5.0, 16.0)))
    assert not charges_no_slower(quick_start, steady)
    assert not charges_no_slower(steady, quick_start)
