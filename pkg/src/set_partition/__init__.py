"""
Set Partitioning Module
=======================

This module assembles the final solution from the route pool:
- Column construction with subset deduplication
- Exact bitmask branch and bound with a time limit
- LP-format export for external cross-checks
"""

from .model import COST_TOLERANCE, SpColumn, SpInstance, build_sp, write_lp
from .solver import SpResult, solve_sp

__all__ = [
    'COST_TOLERANCE',
    'SpColumn',
    'SpInstance',
    'SpResult',
    'build_sp',
    'solve_sp',
    'write_lp',
]
