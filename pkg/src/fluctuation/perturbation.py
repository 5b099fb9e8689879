# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Perturbation Module
License: MIT License

Random link dropping: S_hat = S + S_tilde, where S_tilde holds -S on every
dropped cross-edge and zeros elsewhere.
"""

from typing import Optional

import numpy as np

from src.utils import as_square_matrix
from .model import activation_matrix


def drop_probabilities(p_active: np.ndarray) -> np.ndarray:
    """q = 1 - P_ac with a zero diagonal (self-loops never drop)."""
    q = 1.0 - np.asarray(p_active, dtype=float)
    np.fill_diagonal(q, 0.0)
    return q


def sample_activation(p_active: np.ndarray, rng: np.random.Generator, batch: Optional[int] = None) -> np.ndarray:
    """
    Draws one Bernoulli activation per entry (shape N x N, or B x N x N with
    `batch`); the diagonal is always active.
    """
    n_nodes = p_active.shape[0]
    shape = (n_nodes, n_nodes) if batch is None else (batch, n_nodes, n_nodes)
    active = rng.random(shape) < p_active
    diagonal = np.arange(n_nodes)
    active[..., diagonal, diagonal] = True
    return active


def sample_perturbed_shift(S: np.ndarray, p_active, rng: np.random.Generator) -> np.ndarray:
    """
    One realization of S_hat: every supported off-diagonal entry is kept with
    its own probability and zeroed otherwise.

    Args:
        S (np.ndarray): The designed shift.
        p_active: Scalar or N x N activation probabilities.
        rng (np.random.Generator): Randomness source.

    Returns:
        np.ndarray: The perturbed shift.
    """
    S = as_square_matrix(S, name='S')
    p_active = activation_matrix(p_active, S.shape[0])
    return np.where(sample_activation(p_active, rng), S, 0.0)


def mean_perturbation(S: np.ndarray, p_active) -> np.ndarray:
    """E[S_tilde] = (P_ac - 1) o S off the diagonal, zero on it."""
    S = as_square_matrix(S, name='S')
    p_active = activation_matrix(p_active, S.shape[0])
    return -drop_probabilities(p_active) * S
