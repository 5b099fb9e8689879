# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Execution Module
License: MIT License

Successive application of distinct shifts, and the single-shift FIR filter
used as a baseline.
"""

import logging
from typing import Optional, Sequence

import numpy as np

from src.errors import DimensionError
from src.utils import as_square_matrix, as_vector, check_shift_list
from .trace import RunTrace

logger = logging.getLogger(__name__)


def apply_successive(shifts: Sequence[np.ndarray], x: np.ndarray, T: Optional[np.ndarray] = None) -> RunTrace:
    """
    Runs x^(l) = S_l x^(l-1) for l = 1..L.

    Args:
        shifts (Sequence[np.ndarray]): S_1..S_L.
        x (np.ndarray): Input graph signal.
        T (np.ndarray): Optional target; when given the trace carries
                        ||T x - x^(l)||_2 for every iterate.

    Returns:
        RunTrace: All iterates, starting with x itself.
    """
    shifts = check_shift_list(shifts)
    signal = as_vector(x, name='x', size=shifts[0].shape[0])
    iterates = [signal.copy()]
    for shift in shifts:
        iterates.append(shift @ iterates[-1])

    errors = None
    if T is not None:
        target = as_square_matrix(T, name='T', size=signal.shape[0]) @ signal
        errors = np.array([np.linalg.norm(target - iterate) for iterate in iterates])
    return RunTrace(iterates=iterates, errors=errors)


def apply_fir(S: np.ndarray, coeffs: Sequence[float], x: np.ndarray) -> np.ndarray:
    """
    Evaluates sum_{l=0}^{K-1} c_l S^l x by repeated shifting (no matrix powers).

    Args:
        S (np.ndarray): The shift matrix.
        coeffs (Sequence[float]): Filter coefficients c_0..c_{K-1}.
        x (np.ndarray): Input graph signal.

    Returns:
        np.ndarray: The filtered signal.
    """
    S = as_square_matrix(S, name='S')
    signal = as_vector(x, name='x', size=S.shape[0])
    coeffs = np.asarray(coeffs, dtype=float).reshape(-1)
    if coeffs.size == 0:
        raise DimensionError("An FIR filter needs at least one coefficient")

    shifted = signal.copy()
    output = coeffs[0] * shifted
    for coefficient in coeffs[1:]:
        shifted = S @ shifted
        output = output + coefficient * shifted
    return output
