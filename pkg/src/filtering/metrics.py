# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Metrics Module
License: MIT License
"""

import numpy as np

from src.errors import NumericalError
from src.utils import as_square_matrix, as_vector


def relative_error(T: np.ndarray, x: np.ndarray, y: np.ndarray) -> float:
    """
    ||y - T x||_2 / ||T x||_2.

    Raises:
        NumericalError: When T x is the zero vector.
    """
    T = as_square_matrix(T, name='T')
    x = as_vector(x, name='x', size=T.shape[0])
    y = as_vector(y, name='y', size=T.shape[0])
    target = T @ x
    denominator = np.linalg.norm(target)
    if denominator == 0.0:
        raise NumericalError("Relative error is undefined: T x is the zero vector")
    return float(np.linalg.norm(y - target) / denominator)
