#!/usr/bin/env python3
"""
SEVRP-T Solver - Main Entry Point
=================================

Command-line entry point of the solver toolkit.

Usage:
    python run_solver.py solve --instance tc0c10s2cf1.xml --scenarios 20
    python run_solver.py --help
"""

import sys

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
