"""
Routing Module
==============

This module evaluates fixed routes under the threshold recharging policy:
- Exact expected recourse duration with per-scenario traces
- Single detour options and their geometry
- Lower bounds on route durations
- Non-dominated candidate stations per arc
- JSON evaluation reports
"""

from .bounds import lower_bound_route, prop2_bound
from .fixed_route import (
    INFEASIBLE,
    DetourEvent,
    RecourseTrace,
    Route,
    RouteEvaluation,
    RouteEvaluator,
    detour_option_time,
    evaluate_route,
)
from .geometry import min_dist_point_to_segment, point_segment_distance
from .ndcs import NdcsTable, precompute_ndcs
from .report import evaluation_to_dict, write_route_report

__all__ = [
    'INFEASIBLE',
    'DetourEvent',
    'NdcsTable',
    'RecourseTrace',
    'Route',
    'RouteEvaluation',
    'RouteEvaluator',
    'detour_option_time',
    'evaluate_route',
    'evaluation_to_dict',
    'lower_bound_route',
    'min_dist_point_to_segment',
    'point_segment_distance',
    'precompute_ndcs',
    'prop2_bound',
    'write_route_report',
]
