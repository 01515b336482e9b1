"""
Scenario Module
===============

This module handles energy-consumption uncertainty:
- Monte Carlo scenario generation (uniform, truncated normal, truncated exponential)
- The mean scenario
- Fast forward selection with optimal redistribution
- Scenario files and per-arc moments
"""

from .io import arc_moments, dump_scenarios, load_scenarios
from .reduction import ReducedScenarioSet, reduce_ffs, redistribute, scenario_distances, transport_distance
from .sampling import (
    DISTRIBUTIONS,
    Scenario,
    ScenarioSet,
    generate_scenarios,
    mean_scenario,
    resolve_distribution,
)

__all__ = [
    'DISTRIBUTIONS',
    'ReducedScenarioSet',
    'Scenario',
    'ScenarioSet',
    'arc_moments',
    'dump_scenarios',
    'generate_scenarios',
    'load_scenarios',
    'mean_scenario',
    'redistribute',
    'reduce_ffs',
    'resolve_distribution',
    'scenario_distances',
    'transport_distance',
]
