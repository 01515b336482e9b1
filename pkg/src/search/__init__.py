"""
Search Module
=============

This module generates and assembles routes:
- Solutions and the deduplicated route pool
- The twelve neighborhood operators
- Variable neighborhood descent with bound-based move filtering
- Initial construction, perturbation and the iterated local search driver
- The full ILS + set-partitioning pipeline
"""

from .construction import initial_solution, perturb, removal_count_range
from .ils import IlsResult, ils
from .moves import DEFAULT_ORDER, Move, apply_move, enumerate_moves
from .oracle import SearchOracle
from .pipeline import SolveResult, solve
from .settings import SearchSettings, substream
from .solution import RoutePool, Solution
from .vnd import FilterOutcome, filter_move, vnd

__all__ = [
    'DEFAULT_ORDER',
    'FilterOutcome',
    'IlsResult',
    'Move',
    'RoutePool',
    'SearchOracle',
    'SearchSettings',
    'Solution',
    'SolveResult',
    'apply_move',
    'enumerate_moves',
    'filter_move',
    'ils',
    'initial_solution',
    'perturb',
    'removal_count_range',
    'solve',
    'substream',
    'vnd',
]
