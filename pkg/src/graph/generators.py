# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Graph Generators Module
License: MIT License

Random topologies for experiments and the connectivity check.
"""

import logging

import networkx as nx

from src.errors import InputError
from .topology import Topology, build_topology

logger = logging.getLogger(__name__)


def random_er_graph(n_nodes: int, p_edge: float, directed: bool = True, seed: int = 0,
                    allow_self_loops: bool = True) -> Topology:
    """
    Erdos-Renyi topology. In directed mode each ordered off-diagonal pair is
    included independently with probability `p_edge`; in undirected mode each
    unordered pair is drawn once and added in both directions.

    Args:
        n_nodes (int): Number of nodes.
        p_edge (float): Edge probability in [0, 1].
        directed (bool): Directed or undirected sampling.
        seed (int): Seed; the same seed always returns the same graph.
        allow_self_loops (bool): Passed through to the topology.

    Returns:
        Topology: The sampled topology.
    """
    if not 0.0 <= float(p_edge) <= 1.0:
        raise InputError(f"p_edge must be between 0 and 1, got {p_edge}")
    if int(n_nodes) < 1:
        raise InputError(f"n_nodes must be positive, got {n_nodes}")

    graph = nx.gnp_random_graph(int(n_nodes), float(p_edge), seed=int(seed), directed=bool(directed))
    edges = sorted(graph.edges())
    topology = build_topology(n_nodes, edges, allow_self_loops=allow_self_loops,
                              directed=directed, one_based=False)
    logger.debug(f"Sampled ER graph: n={n_nodes}, p={p_edge}, directed={directed}, "
                 f"seed={seed}, edges={len(topology.edges)}")
    return topology


def is_connected(topology: Topology) -> bool:
    """True iff the underlying undirected graph is connected."""
    return nx.is_weakly_connected(topology.to_networkx())
