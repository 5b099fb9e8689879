# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Design Objective Module
License: MIT License

Products of successive shifts and the per-round approximation costs.
"""

from typing import List, Sequence

import numpy as np

from src.errors import DimensionError
from src.utils import as_square_matrix, check_shift_list


def product_range(shifts: Sequence[np.ndarray], high: int, low: int) -> np.ndarray:
    """
    Returns S_{high:low} = S_high ... S_low with 1-based round indices; the
    empty product (high < low) is the identity.
    """
    size = np.asarray(shifts[0]).shape[0]
    product = np.eye(size)
    for index in range(low, high + 1):
        product = np.asarray(shifts[index - 1]) @ product
    return product


def prefix_products(shifts: Sequence[np.ndarray]) -> List[np.ndarray]:
    """Returns [S_{1:1}, S_{2:1}, ..., S_{L:1}]."""
    products = []
    current = None
    for shift in shifts:
        current = np.asarray(shift) if current is None else np.asarray(shift) @ current
        products.append(current)
    return products


def _round_costs(T: np.ndarray, shifts: Sequence[np.ndarray]) -> np.ndarray:
    T = as_square_matrix(T, name='T')
    shifts = check_shift_list(shifts, size=T.shape[0])
    return np.array([np.sum((T - product) ** 2) for product in prefix_products(shifts)])


def per_round_errors(T: np.ndarray, shifts: Sequence[np.ndarray]) -> np.ndarray:
    """Frobenius errors ||T - S_{l:1}||_F for l = 1..L."""
    return np.sqrt(_round_costs(T, shifts))


def objective(T: np.ndarray, shifts: Sequence[np.ndarray], weights: Sequence[float]) -> float:
    """
    Weighted successive cost: sum over l of w_l * ||T - S_l ... S_1||_F^2.

    Args:
        T (np.ndarray): Target transformation (N x N).
        shifts (Sequence[np.ndarray]): S_1..S_L.
        weights (Sequence[float]): One weight per round.

    Returns:
        float: The nonnegative cost.
    """
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (len(shifts),):
        raise DimensionError(f"Got {weights.size} weights for {len(shifts)} shifts")
    return float(weights @ _round_costs(T, shifts))


def unweighted_objective(T: np.ndarray, shifts: Sequence[np.ndarray]) -> float:
    """Equal-emphasis cost: sum over l of ||T - S_l ... S_1||_F^2."""
    return float(np.sum(_round_costs(T, shifts)))
