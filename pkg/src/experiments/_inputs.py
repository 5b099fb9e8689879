# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Experiment Inputs Module
License: MIT License

Builds the topology, target transformation, input signals and shift
sequence of an experiment from its configuration.
"""

import logging

import numpy as np
import scipy.linalg

from src.cli.config_loader import ExperimentConfig, GraphSpec, TargetSpec
from src.design.bcd import ShiftSequence, bcd_design
from src.errors import DimensionError, InputError
from src.exporters.graph_file import read_graph
from src.exporters.matrix import read_matrix, read_signal
from src.exporters.shift_sequence import read_shift_sequence
from src.filtering.signals import sample_signals
from src.fluctuation.spectral import spectral_norm
from src.graph.generators import is_connected, random_er_graph
from src.graph.topology import Topology
from src.utils import as_square_matrix, substream

# Keys of the 'data' substream.
TARGET_KEY = 0
SIGNAL_KEY = 1
TRIAL_SIGNAL_BASE = 2


def build_graph(spec: GraphSpec, seed: int, local_logger: logging.Logger) -> Topology:
    """Reads the graph file or samples an ER graph (graph seed defaults to the experiment seed)."""
    if spec.file:
        return read_graph(spec.file)
    graph_seed = seed if spec.seed is None else spec.seed
    topology = random_er_graph(spec.n_nodes, spec.p_edge, directed=spec.directed, seed=graph_seed,
                               allow_self_loops=spec.self_loops)
    if not is_connected(topology):
        local_logger.warning(f"Sampled ER graph (n={spec.n_nodes}, p={spec.p_edge}, seed={graph_seed}) "
                             f"is not connected; the target may not be reachable.")
    local_logger.info(f"Sampled ER graph with {topology.n_nodes} nodes and {topology.cross_edge_count} cross-edges")
    return topology


def builtin_target(name: str, n_nodes: int, rank: int = 1, seed: int = 0) -> np.ndarray:
    """
    Built-in targets: 'consensus' (1/N) 1 1^T, 'identity', and
    'random-projection', the orthogonal projector onto a random rank-r subspace.
    """
    if name == 'consensus':
        return np.full((n_nodes, n_nodes), 1.0 / n_nodes)
    if name == 'identity':
        return np.eye(n_nodes)
    if name == 'random-projection':
        if not 1 <= int(rank) <= n_nodes:
            raise InputError(f"Projection rank must lie in 1..{n_nodes}, got {rank}")
        basis = scipy.linalg.orth(substream(seed, 'data', TARGET_KEY).standard_normal((n_nodes, int(rank))))
        return basis @ basis.T
    raise InputError(f"Unknown builtin target '{name}'")


def build_target(spec: TargetSpec, n_nodes: int, seed: int) -> np.ndarray:
    if spec.file:
        T = read_matrix(spec.file)
        if T.shape != (n_nodes, n_nodes):
            raise DimensionError(f"Target {spec.file} is {T.shape[0]}x{T.shape[1]} but the graph has {n_nodes} nodes")
        return as_square_matrix(T, name='T')
    return builtin_target(spec.builtin, n_nodes, spec.rank, seed if spec.seed is None else spec.seed)


def input_signal(config: ExperimentConfig, n_nodes: int) -> np.ndarray:
    """The signal file, or a draw of the configured signal model from the experiment's data stream."""
    if config.signal_file:
        x = read_signal(config.signal_file)
        if x.shape[0] != n_nodes:
            raise DimensionError(f"Signal {config.signal_file} has {x.shape[0]} entries for {n_nodes} nodes")
        return x
    return sample_signals(1, n_nodes, substream(config.seed, 'data', SIGNAL_KEY),
                          config.signal_model, config.signal_noise)[0]


def trial_signal(config: ExperimentConfig, index: int, n_nodes: int) -> np.ndarray:
    """Input signal of the index-th repetition of a multi-seed experiment."""
    return sample_signals(1, n_nodes, substream(config.seed, 'data', TRIAL_SIGNAL_BASE + index),
                          config.signal_model, config.signal_noise)[0]


def load_topology(config: ExperimentConfig, local_logger: logging.Logger) -> Topology:
    """The stored design's graph when a shift directory is given, otherwise the [graph] section."""
    if config.shifts_dir:
        return read_shift_sequence(config.shifts_dir).topology
    return build_graph(config.graph, config.seed, local_logger)


def obtain_shifts(config: ExperimentConfig, topology: Topology, T: np.ndarray,
                  local_logger: logging.Logger) -> ShiftSequence:
    """Loads the configured shift directory or designs a new sequence."""
    if config.shifts_dir:
        sequence = read_shift_sequence(config.shifts_dir)
        if sequence.n_nodes != T.shape[0]:
            raise DimensionError(f"Shifts in {config.shifts_dir} are for {sequence.n_nodes} nodes, "
                                 f"target is {T.shape[0]}x{T.shape[0]}")
        local_logger.info(f"Loaded shift sequence (L={sequence.L}) from {config.shifts_dir}")
        return sequence
    return bcd_design(T, topology, config.design, local_logger=local_logger)


def fir_shift_matrix(topology: Topology, kind: str = 'adjacency') -> np.ndarray:
    """
    Single shift for the FIR baseline: the cross-edge adjacency scaled to unit
    spectral norm, or the in-degree Laplacian.
    """
    adjacency = topology.adjacency()
    np.fill_diagonal(adjacency, 0.0)
    if kind == 'laplacian':
        return np.diag(adjacency.sum(axis=1)) - adjacency
    norm = spectral_norm(adjacency)
    return adjacency / norm if norm > 0 else adjacency
