# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Graph Package
License: MIT License

This package holds the directed network topology, the support basis that
shift operators must respect, and random-graph generators for experiments.
"""

from .topology import Topology, SupportBasis, build_topology, build_support_basis, respects_support
from .generators import random_er_graph, is_connected

__all__ = [
    'Topology', 'SupportBasis', 'build_topology', 'build_support_basis', 'respects_support',
    'random_er_graph', 'is_connected',
]
