# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Deviation Moments Module
License: MIT License

Closed-form first and second moments of the first-round deviation
z_1 = S_tilde_1 x under independent Bernoulli link drops, and the closed-form
mean of z_2 used as an oracle for the Monte-Carlo estimates.

With q = 1 - P_ac (zero diagonal), s_tilde_{ia} = -S_{ia} d_{ia} where
d_{ia} ~ Bernoulli(q_{ia}). Then
    E[s_tilde_{ja} s_tilde_{ib}] = S_{ja} S_{ib} q_{ja} q_{ib}   if (j, a) != (i, b)
                                 = S_{ja}^2 q_{ja}               otherwise.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.errors import DimensionError
from src.utils import as_square_matrix, as_vector
from .model import activation_matrix
from .perturbation import drop_probabilities, mean_perturbation

logger = logging.getLogger(__name__)

PSD_TOLERANCE = 1e-10


@dataclass(frozen=True)
class DeviationMoments:
    """
    Mean and covariance of a deviation vector z. `trials` and `mean_stderr`
    are set for Monte-Carlo estimates and left empty for closed forms.
    """
    mean: np.ndarray
    cov: np.ndarray
    trials: Optional[int] = None
    mean_stderr: Optional[np.ndarray] = None
    second_moment_stderr: Optional[np.ndarray] = None

    @property
    def outer_mean(self) -> np.ndarray:
        """M_z = m_z m_z^T."""
        return np.outer(self.mean, self.mean)

    @property
    def second_moment(self) -> np.ndarray:
        """E[z z^T] = Sigma_z + m_z m_z^T."""
        return self.cov + self.outer_mean

    def is_psd(self, tolerance: float = PSD_TOLERANCE) -> bool:
        """True iff the covariance is symmetric with no eigenvalue below -tolerance."""
        if not np.allclose(self.cov, self.cov.T, atol=tolerance):
            return False
        return bool(np.linalg.eigvalsh((self.cov + self.cov.T) / 2.0).min() >= -tolerance)


def cross_correlation(S: np.ndarray, p_active, j: int, i: int) -> np.ndarray:
    """
    C_{ji} = E[s_tilde_j s_tilde_i^T], the cross-correlation between rows j
    and i (0-based) of S_tilde.
    """
    S = as_square_matrix(S, name='S')
    q = drop_probabilities(activation_matrix(p_active, S.shape[0]))
    row_j = S[j] * q[j]
    row_i = S[i] * q[i]
    correlation = np.outer(row_j, row_i)
    if i == j:
        # same entry: E[d^2] = q instead of q^2
        correlation[np.diag_indices_from(correlation)] = S[j] ** 2 * q[j]
    return correlation


def chi_matrix(S: np.ndarray, p_active, x: np.ndarray) -> np.ndarray:
    """chi = E[S_tilde X S_tilde^T] with X = x x^T, i.e. the second moment of S_tilde x."""
    S = as_square_matrix(S, name='S')
    x = as_vector(x, name='x', size=S.shape[0])
    q = drop_probabilities(activation_matrix(p_active, S.shape[0]))
    mean = -(q * S) @ x
    variance = (S ** 2 * (q - q ** 2)) @ (x ** 2)
    return np.outer(mean, mean) + np.diag(variance)


def z1_moments(S1: np.ndarray, p_active, x: np.ndarray) -> DeviationMoments:
    """
    Moments of z_1 = S_tilde_1 x: m = m_{S_tilde_1} x and
    (Sigma)_{ij} = tr(X C_{ji}) - (m m^T)_{ij}. Independence across edges
    makes Sigma diagonal.

    Args:
        S1 (np.ndarray): First designed shift.
        p_active: Scalar or N x N activation probabilities.
        x (np.ndarray): Input signal.

    Returns:
        DeviationMoments: Closed-form mean and covariance.
    """
    S1 = as_square_matrix(S1, name='S_1')
    x = as_vector(x, name='x', size=S1.shape[0])
    p_active = activation_matrix(p_active, S1.shape[0])
    mean = mean_perturbation(S1, p_active) @ x
    cov = chi_matrix(S1, p_active, x) - np.outer(mean, mean)
    return DeviationMoments(mean=mean, cov=cov)


def z2_mean(S1: np.ndarray, S2: np.ndarray, p_active, x: np.ndarray) -> np.ndarray:
    """Closed-form m_{z_2} = m_{S_tilde_2} (S_1 + m_{S_tilde_1}) x."""
    S1 = as_square_matrix(S1, name='S_1')
    S2 = as_square_matrix(S2, name='S_2', size=S1.shape[0])
    x = as_vector(x, name='x', size=S1.shape[0])
    if np.ndim(p_active) == 2 and np.shape(p_active) != S1.shape:
        raise DimensionError(f"P_ac must be {S1.shape[0]}x{S1.shape[0]}")
    return mean_perturbation(S2, p_active) @ (S1 + mean_perturbation(S1, p_active)) @ x
