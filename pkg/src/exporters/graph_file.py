# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Graph File Module
License: MIT License

Graph file format: line 1 is `N directed|undirected self_loops=0|1`, then one
1-based `src dst` pair per line. Lines starting with `#` are ignored.
"""

import logging
import os

from src.errors import InputError
from src.graph.topology import Topology, build_topology

logger = logging.getLogger(__name__)


def read_graph(path: str) -> Topology:
    """
    Parses a graph file into a Topology.

    Args:
        path (str): The graph file.

    Returns:
        Topology: The parsed topology.
    """
    if not os.path.isfile(path):
        raise InputError(f"Graph file not found: {path}")
    with open(path, 'r', encoding='utf-8') as handle:
        lines = [line.split('#', 1)[0].strip() for line in handle]
    lines = [line for line in lines if line]
    if not lines:
        raise InputError(f"Graph file is empty: {path}")

    header = lines[0].split()
    if len(header) != 3 or header[1] not in ('directed', 'undirected') or not header[2].startswith('self_loops='):
        raise InputError(f"Malformed graph header in {path}: '{lines[0]}'")
    try:
        n_nodes = int(header[0])
        self_loops = header[2].split('=', 1)[1]
        if self_loops not in ('0', '1'):
            raise ValueError(f"self_loops must be 0 or 1, got {self_loops}")
        edges = []
        for line in lines[1:]:
            tokens = line.split()
            if len(tokens) != 2:
                raise ValueError(f"expected 'src dst', got '{line}'")
            edges.append((int(tokens[0]), int(tokens[1])))
    except ValueError as e:
        raise InputError(f"Malformed graph file {path}: {e}") from e

    topology = build_topology(n_nodes, edges, allow_self_loops=self_loops == '1',
                              directed=header[1] == 'directed')
    logger.info(f"Loaded graph from {path}: {topology.n_nodes} nodes, {len(topology.edges)} edges.")
    return topology


def write_graph(path: str, topology: Topology) -> str:
    """Writes `topology` as a directed graph file (every stored edge on its own line)."""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as handle:
        handle.write(f"{topology.n_nodes} directed self_loops={int(topology.allow_self_loops)}\n")
        for src, dst in topology.edges:
            handle.write(f"{src + 1} {dst + 1}\n")
    return path
