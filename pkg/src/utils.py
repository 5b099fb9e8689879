# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Utility Functions Module
License: MIT License

This module provides general helpers used across the package: named random
substreams, array validation and float formatting.
"""

import logging
from typing import Sequence

import numpy as np

from src.config import Config
from src.errors import DimensionError, InputError

# Configure logger for this module
logger = logging.getLogger(__name__)

# Stable integer codes for the named substreams. Never renumber: the codes are
# part of every stream's identity and therefore of every persisted result.
STREAM_CODES = {
    'design-init': 1,
    'fluctuation': 2,
    'estimator': 3,
    'data': 4,
    'spectral': 5,
    'graph': 6,
}


def substream(seed: int, name: str, *keys: int) -> np.random.Generator:
    """
    Returns a counter-based generator for the named substream of `seed`.
    The same (seed, name, keys) always yields the same stream, independent of
    how many other streams were drawn before.

    Args:
        seed (int): The experiment seed.
        name (str): One of the names in STREAM_CODES.
        *keys (int): Further counters, e.g. a chunk index or a node index.

    Returns:
        np.random.Generator: A Philox-backed generator.
    """
    if name not in STREAM_CODES:
        raise InputError(f"Unknown random stream '{name}'. Known streams: {', '.join(STREAM_CODES)}")
    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=(STREAM_CODES[name], *[int(k) for k in keys]))
    return np.random.Generator(np.random.Philox(sequence))


def as_square_matrix(matrix, name: str = 'matrix', size: int = None) -> np.ndarray:
    """
    Converts `matrix` to a float array and checks that it is square (and of
    `size` rows when given) with finite entries.
    """
    array = np.asarray(matrix, dtype=float)
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise DimensionError(f"{name} must be a square matrix, got shape {array.shape}")
    if size is not None and array.shape[0] != size:
        raise DimensionError(f"{name} must be {size}x{size}, got {array.shape[0]}x{array.shape[1]}")
    if not np.all(np.isfinite(array)):
        raise InputError(f"{name} contains non-finite entries")
    return array


def as_vector(values, name: str = 'vector', size: int = None) -> np.ndarray:
    """Converts `values` to a finite 1-D float array of optional length `size`."""
    array = np.asarray(values, dtype=float)
    if array.ndim == 2 and 1 in array.shape:
        array = array.reshape(-1)
    if array.ndim != 1:
        raise DimensionError(f"{name} must be a vector, got shape {array.shape}")
    if size is not None and array.shape[0] != size:
        raise DimensionError(f"{name} must have length {size}, got {array.shape[0]}")
    if not np.all(np.isfinite(array)):
        raise InputError(f"{name} contains non-finite entries")
    return array


def check_shift_list(shifts: Sequence[np.ndarray], size: int = None) -> list:
    """Validates a non-empty list of equally sized square shift matrices."""
    if len(shifts) == 0:
        raise InputError("At least one shift matrix is required")
    checked = []
    for index, shift in enumerate(shifts, start=1):
        checked.append(as_square_matrix(shift, name=f"S_{index}", size=size))
        size = checked[0].shape[0]
    return checked


def format_float(value: float) -> str:
    """Formats a float with 17 significant digits (round-trip exact)."""
    return Config.FLOAT_FORMAT % float(value)
