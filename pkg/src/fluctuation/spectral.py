# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Spectral Norm Module
License: MIT License

Largest singular value by power iteration on S^T S.
"""

import logging

import numpy as np

from src.config import Config
from src.utils import as_square_matrix, substream

logger = logging.getLogger(__name__)


def spectral_norm(matrix: np.ndarray, tol: float = Config.POWER_ITERATION_TOL,
                  max_iter: int = Config.POWER_ITERATION_MAX_ITER) -> float:
    """
    Estimates ||S||_2 by power iteration on S^T S with a Rayleigh-quotient
    stopping rule (relative change below `tol`). On non-convergence the best
    estimate is returned and a warning is logged.

    Args:
        matrix (np.ndarray): Square matrix S.
        tol (float): Relative tolerance on the eigenvalue of S^T S.
        max_iter (int): Iteration cap.

    Returns:
        float: The spectral norm estimate.
    """
    matrix = as_square_matrix(matrix, name='S')
    gram = matrix.T @ matrix
    if not np.any(gram):
        return 0.0

    vector = substream(0, 'spectral').standard_normal(gram.shape[0])
    vector /= np.linalg.norm(vector)
    eigenvalue = float(vector @ gram @ vector)
    for iteration in range(1, int(max_iter) + 1):
        image = gram @ vector
        norm = np.linalg.norm(image)
        if norm == 0.0:
            # start vector fell into the null space
            vector = substream(iteration, 'spectral').standard_normal(gram.shape[0])
            vector /= np.linalg.norm(vector)
            continue
        vector = image / norm
        updated = float(vector @ gram @ vector)
        if abs(updated - eigenvalue) <= tol * abs(updated):
            return float(np.sqrt(max(updated, 0.0)))
        eigenvalue = updated

    logger.warning(f"Power iteration did not converge in {max_iter} iterations; "
                   f"returning best estimate {np.sqrt(max(eigenvalue, 0.0)):.6g}")
    return float(np.sqrt(max(eigenvalue, 0.0)))
