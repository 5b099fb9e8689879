# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Block Solver Module
License: MIT License

Least-squares subproblem for one shift S_j with all other shifts fixed.

With A = S_{j-1:1} and B_l = S_{l:j+1}, column k of (A^T kron B_l) E is
vec(B_l e_{n_k} e_{n'_k}^T A), the outer product of column n_k of B_l with row
n'_k of A. Inner products of such outer products factor, so the E x E normal
matrix is assembled entrywise as
    G[k, k'] = sum_l w_l (B_l^T B_l)[n_k, n_k'] * (A A^T)[n'_k, n'_k']
and the right-hand side as r[k] = sum_l w_l (B_l^T T A^T)[n_k, n'_k].
No Kronecker product is ever formed.
"""

import logging
import warnings
from typing import Sequence, Tuple

import numpy as np
import scipy.linalg

from src.errors import DimensionError, InputError, SingularBlockError
from src.graph.topology import SupportBasis
from src.utils import as_square_matrix, check_shift_list
from .objective import product_range

logger = logging.getLogger(__name__)


def block_normal_system(j: int, shifts: Sequence[np.ndarray], T: np.ndarray, weights: Sequence[float],
                        support_basis: SupportBasis) -> Tuple[np.ndarray, np.ndarray]:
    """
    Assembles the normal equations G s = r of block j (1-based).

    Returns:
        Tuple[np.ndarray, np.ndarray]: The E x E matrix G and the vector r.
    """
    T = as_square_matrix(T, name='T', size=support_basis.n_nodes)
    shifts = check_shift_list(shifts, size=T.shape[0])
    L = len(shifts)
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (L,):
        raise DimensionError(f"Got {weights.size} weights for {L} shifts")
    if not 1 <= int(j) <= L:
        raise InputError(f"Block index j must be in 1..{L}, got {j}")

    rows, cols = support_basis.rows, support_basis.cols
    right = product_range(shifts, j - 1, 1)
    right_gram = (right @ right.T)[np.ix_(cols, cols)]
    target_right = T @ right.T

    gram = np.zeros((support_basis.e_count, support_basis.e_count))
    rhs = np.zeros(support_basis.e_count)
    left = np.eye(T.shape[0])
    for l in range(j, L + 1):
        if l > j:
            left = shifts[l - 1] @ left
        weight = weights[l - 1]
        if weight == 0.0:
            continue
        gram += weight * (left.T @ left)[np.ix_(rows, rows)] * right_gram
        rhs += weight * (left.T @ target_right)[rows, cols]
    return gram, rhs


def solve_block(j: int, shifts: Sequence[np.ndarray], T: np.ndarray, weights: Sequence[float],
                support_basis: SupportBasis, ridge: float = 0.0) -> np.ndarray:
    """
    Minimizes sum_{l>=j} w_l ||vec(T) - (S_{j-1:1}^T kron S_{l:j+1}) E s||^2 + ridge ||s||^2
    over the support coefficients s of S_j.

    Args:
        j (int): 1-based block index.
        shifts (Sequence[np.ndarray]): Current S_1..S_L; entry j is ignored.
        T (np.ndarray): Target transformation.
        weights (Sequence[float]): Round weights.
        support_basis (SupportBasis): Permitted entries.
        ridge (float): Nonnegative Tikhonov term.

    Returns:
        np.ndarray: Coefficient vector of length E (use support_basis.to_matrix).

    Raises:
        SingularBlockError: The (regularized) normal matrix is numerically singular.
    """
    gram, rhs = block_normal_system(j, shifts, T, weights, support_basis)
    system = gram + float(ridge) * np.eye(gram.shape[0])
    trace = float(np.trace(gram))
    if not np.any(system):
        raise SingularBlockError(f"Block {j} has an all-zero normal matrix", trace=trace, e_count=gram.shape[0])
    try:
        with warnings.catch_warnings():
            warnings.simplefilter('error', scipy.linalg.LinAlgWarning)
            coefficients = scipy.linalg.solve(system, rhs, assume_a='pos')
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgWarning) as e:
        raise SingularBlockError(f"Block {j} normal matrix is singular (ridge={ridge:g}): {e}",
                                 trace=trace, e_count=gram.shape[0]) from e
    if not np.all(np.isfinite(coefficients)):
        raise SingularBlockError(f"Block {j} produced non-finite coefficients", trace=trace, e_count=gram.shape[0])
    return coefficients
