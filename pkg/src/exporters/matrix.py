# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Matrix File Module
License: MIT License

Text matrix format: line 1 is `rows cols`, then one row per line with
whitespace-separated decimals at full precision. Signals use cols = 1.
"""

import logging
import os

import numpy as np

from src.config import Config
from src.errors import InputError

logger = logging.getLogger(__name__)


def write_matrix(path: str, matrix: np.ndarray) -> str:
    """
    Writes a matrix (or a vector, as a single column) in the text format.

    Args:
        path (str): Destination file.
        matrix (np.ndarray): 2-D array, or 1-D array written as rows x 1.

    Returns:
        str: The path written.
    """
    array = np.asarray(matrix, dtype=float)
    if array.ndim == 1:
        array = array.reshape(-1, 1)
    if array.ndim != 2:
        raise InputError(f"Only matrices and vectors can be written, got shape {array.shape}")
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as handle:
        handle.write(f"{array.shape[0]} {array.shape[1]}\n")
        np.savetxt(handle, array, fmt=Config.FLOAT_FORMAT, delimiter=' ')
    logger.debug(f"Wrote {array.shape[0]}x{array.shape[1]} matrix to {path}")
    return path


def read_matrix(path: str) -> np.ndarray:
    """Reads a matrix written by `write_matrix`; raises InputError on malformed files."""
    if not os.path.isfile(path):
        raise InputError(f"Matrix file not found: {path}")
    with open(path, 'r', encoding='utf-8') as handle:
        lines = [line.strip() for line in handle if line.strip() and not line.lstrip().startswith('#')]
    if not lines:
        raise InputError(f"Matrix file is empty: {path}")
    try:
        rows, cols = (int(token) for token in lines[0].split())
        values = [float(token) for line in lines[1:] for token in line.split()]
    except ValueError as e:
        raise InputError(f"Malformed matrix file {path}: {e}") from e
    if rows < 1 or cols < 1 or len(values) != rows * cols:
        raise InputError(f"Matrix file {path} declares {rows}x{cols} but holds {len(values)} values")
    return np.array(values, dtype=float).reshape(rows, cols)


def read_signal(path: str) -> np.ndarray:
    """Reads a signal file (a matrix with one column) as a 1-D array."""
    matrix = read_matrix(path)
    if matrix.shape[1] != 1:
        raise InputError(f"Signal file {path} must have one column, got {matrix.shape[1]}")
    return matrix[:, 0]
