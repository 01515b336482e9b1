"""
Instance Module
===============

This module handles the SEVRP-T network:
- Nodes, policy parameters and the immutable Instance
- Validation diagnostics
- Canonical JSON loading/dumping and the benchmark XML importer
"""

from .io import BENCHMARK, CANONICAL, build_instance, dump_instance, load_instance, to_canonical
from .network import Instance, Node, NodeKind, PolicyParams, validate

__all__ = [
    'BENCHMARK',
    'CANONICAL',
    'Instance',
    'Node',
    'NodeKind',
    'PolicyParams',
    'build_instance',
    'dump_instance',
    'load_instance',
    'to_canonical',
    'validate',
]
