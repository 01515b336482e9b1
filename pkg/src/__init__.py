"""
SEVRP-T Solver Package
======================

This package contains all the core components of the threshold-policy
electric vehicle routing toolkit:
- Instance loading and validation (canonical JSON, benchmark XML)
- Piecewise-linear charging curves
- Energy-consumption scenarios (sampling, mean, forward selection)
- Fixed-route recourse evaluation and bounds
- ILS + VND route generation and set-partitioning assembly
- Stochastic value measures (RP, WS, EVPI, EEV, VSS)
- Command-line front end
"""

__version__ = "1.0.0"
