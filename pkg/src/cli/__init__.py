"""
CLI Module
==========

This module provides the command-line surface:
- Run configuration from environment, configuration files and flags
- Logging set-up
- The solve, scenarios, measures, sweep and evaluate-route subcommands
"""

from .commands import (
    cmd_evaluate_route,
    cmd_measures,
    cmd_scenarios,
    cmd_solve,
    cmd_sweep,
    prepare_instance,
    prepare_scenarios,
    write_atomic,
)
from .config import RunConfig, load_run_config
from .logs import setup_logging
from .main import build_parser, main

__all__ = [
    'RunConfig',
    'build_parser',
    'cmd_evaluate_route',
    'cmd_measures',
    'cmd_scenarios',
    'cmd_solve',
    'cmd_sweep',
    'load_run_config',
    'main',
    'prepare_instance',
    'prepare_scenarios',
    'setup_logging',
    'write_atomic',
]
