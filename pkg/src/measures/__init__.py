"""
Measures Module
===============

This module reports the value of the stochastic solution:
- RP, WS, EVPI, EVP, EEV, VSS
- Relative gaps between objective values
- CSV rows in a fixed column order
"""

from .stochastic import (
    CSV_COLUMNS,
    MeasuresReport,
    expected_value_analysis,
    gap,
    measures_frame,
    measures_report,
    recourse_value,
    wait_and_see,
)

__all__ = [
    'CSV_COLUMNS',
    'MeasuresReport',
    'expected_value_analysis',
    'gap',
    'measures_frame',
    'measures_report',
    'recourse_value',
    'wait_and_see',
]
