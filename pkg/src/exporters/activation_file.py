# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Activation Probability Input Module
License: MIT License

P_ac can be given as a scalar (uniform), an edge-list file with one 1-based
`src dst p` triple per line (unlisted links stay active with probability 1),
or a full matrix file in the text matrix format.
"""

import logging
import os
from typing import Union

import numpy as np

from src.errors import InputError
from src.fluctuation.model import activation_matrix
from .matrix import read_matrix

logger = logging.getLogger(__name__)


def _read_edge_probabilities(path: str, lines: list, n_nodes: int) -> np.ndarray:
    matrix = np.ones((n_nodes, n_nodes))
    for line in lines:
        tokens = line.split()
        if len(tokens) != 3:
            raise InputError(f"Malformed activation line in {path}: '{line}' (expected 'src dst p')")
        try:
            src, dst, probability = int(tokens[0]) - 1, int(tokens[1]) - 1, float(tokens[2])
        except ValueError as e:
            raise InputError(f"Malformed activation line in {path}: {e}") from e
        if not (0 <= src < n_nodes and 0 <= dst < n_nodes):
            raise InputError(f"Activation entry ({tokens[0]}, {tokens[1]}) in {path} is out of range for {n_nodes} nodes")
        matrix[dst, src] = probability
    return matrix


def load_activation(source: Union[float, str], n_nodes: int) -> np.ndarray:
    """
    Resolves a P_ac source into an N x N matrix.

    Args:
        source: A number, a numeric string, or a path to an edge-list or matrix file.
        n_nodes (int): Number of nodes.

    Returns:
        np.ndarray: The activation matrix.
    """
    if isinstance(source, (int, float)):
        return activation_matrix(float(source), n_nodes)
    text = str(source).strip()
    try:
        return activation_matrix(float(text), n_nodes)
    except ValueError:
        pass
    if not os.path.isfile(text):
        raise InputError(f"Activation file not found: {text}")
    with open(text, 'r', encoding='utf-8') as handle:
        lines = [line.split('#', 1)[0].strip() for line in handle]
    lines = [line for line in lines if line]
    if not lines:
        raise InputError(f"Activation file is empty: {text}")
    if len(lines[0].split()) == 2:
        matrix = read_matrix(text)
    else:
        matrix = _read_edge_probabilities(text, lines, n_nodes)
    logger.debug(f"Loaded activation probabilities from {text}")
    return activation_matrix(matrix, n_nodes)
