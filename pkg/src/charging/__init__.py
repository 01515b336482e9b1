"""
Charging Module
===============

This module handles station charging curves:
- Piecewise-linear concave SoC-vs-time curves
- Forward evaluation (SoC after a charging time)
- Exact inverse (time between two SoC levels)
"""

from .curves import (
    ChargeQuery,
    ChargingFunction,
    charges_no_slower,
    inverse_charge_time,
    min_time_per_kwh,
    soc_after,
    time_at_soc,
)

__all__ = [
    'ChargeQuery',
    'ChargingFunction',
    'charges_no_slower',
    'inverse_charge_time',
    'min_time_per_kwh',
    'soc_after',
    'time_at_soc',
]
