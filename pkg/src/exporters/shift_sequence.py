# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Shift Sequence Exporter Module
License: MIT License

A designed ShiftSequence is stored as a directory holding `meta.json`,
`S_1.mat` ... `S_L.mat` in the text matrix format, and `graph.txt`.
"""

import json
import logging
import os

import numpy as np

from src.design.bcd import ShiftSequence
from src.errors import InputError
from src.graph.topology import build_topology
from .graph_file import read_graph, write_graph
from .matrix import read_matrix, write_matrix

logger = logging.getLogger(__name__)

META_FILE = 'meta.json'
GRAPH_FILE = 'graph.txt'


def shift_file_name(index: int) -> str:
    return f"S_{index}.mat"


def write_shift_sequence(directory: str, sequence: ShiftSequence) -> str:
    """
    Persists a ShiftSequence.

    Args:
        directory (str): Target directory (created if needed).
        sequence (ShiftSequence): The design result.

    Returns:
        str: The directory.
    """
    os.makedirs(directory, exist_ok=True)
    for index, shift in enumerate(sequence.shifts, start=1):
        write_matrix(os.path.join(directory, shift_file_name(index)), shift)
    write_graph(os.path.join(directory, GRAPH_FILE), sequence.topology)
    meta = {
        'L': sequence.L,
        'n_nodes': sequence.n_nodes,
        'weights': [float(w) for w in sequence.weights],
        'epsilon': float(sequence.epsilon),
        'seed': int(sequence.seed),
        'init_scheme': sequence.init_scheme,
        'init_scale': float(sequence.init_scale),
        'stop_on': sequence.stop_on,
        'sweeps': int(sequence.sweeps),
        'converged': bool(sequence.converged),
        'objective_history': [float(v) for v in sequence.objective_history],
        'unweighted_history': [float(v) for v in sequence.unweighted_history],
        'per_round_error': [float(v) for v in sequence.per_round_error],
    }
    with open(os.path.join(directory, META_FILE), 'w', encoding='utf-8') as handle:
        json.dump(meta, handle, indent=2, sort_keys=True)
        handle.write('\n')
    logger.info(f"Saved shift sequence (L={sequence.L}) to {directory}")
    return directory


def read_shift_sequence(directory: str) -> ShiftSequence:
    """
    Loads a directory written by `write_shift_sequence`. Without `graph.txt`
    the topology is rebuilt from the union of the shift supports.
    """
    meta_path = os.path.join(directory, META_FILE)
    if not os.path.isfile(meta_path):
        raise InputError(f"Shift directory has no {META_FILE}: {directory}")
    try:
        with open(meta_path, 'r', encoding='utf-8') as handle:
            meta = json.load(handle)
        L = int(meta['L'])
    except (ValueError, KeyError) as e:
        raise InputError(f"Malformed {meta_path}: {e}") from e

    shifts = [read_matrix(os.path.join(directory, shift_file_name(index))) for index in range(1, L + 1)]
    graph_path = os.path.join(directory, GRAPH_FILE)
    if os.path.isfile(graph_path):
        topology = read_graph(graph_path)
    else:
        support = np.any(np.stack([shift != 0.0 for shift in shifts]), axis=0)
        rows, cols = np.nonzero(support)
        topology = build_topology(shifts[0].shape[0], [(c, r) for r, c in zip(rows, cols) if r != c],
                                  allow_self_loops=bool(np.any(np.diag(support))), one_based=False)
    if topology.n_nodes != shifts[0].shape[0]:
        raise InputError(f"{graph_path} has {topology.n_nodes} nodes but the shifts are "
                         f"{shifts[0].shape[0]}x{shifts[0].shape[0]}")
    return ShiftSequence(
        shifts=shifts,
        topology=topology,
        weights=tuple(meta.get('weights', [1.0 / L] * L)),
        objective_history=list(meta.get('objective_history', [])),
        unweighted_history=list(meta.get('unweighted_history', [])),
        per_round_error=np.asarray(meta.get('per_round_error', []), dtype=float),
        sweeps=int(meta.get('sweeps', 0)),
        converged=bool(meta.get('converged', False)),
        epsilon=float(meta.get('epsilon', 0.0)),
        seed=int(meta.get('seed', 0)),
        init_scheme=meta.get('init_scheme', 'scaled-random'),
        init_scale=float(meta.get('init_scale', 1.0)),
        stop_on=meta.get('stop_on', 'unweighted'),
    )
