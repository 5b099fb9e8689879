# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Fluctuation Model Module
License: MIT License

Per-edge activation probabilities P_ac and the spectral-norm cap rho.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from src.errors import BoundValidationError, DimensionError, InputError
from src.utils import check_shift_list
from .spectral import spectral_norm

logger = logging.getLogger(__name__)

# Relative slack when comparing rho against a power-iteration estimate.
RHO_SLACK = 1e-9


def activation_matrix(p_active, n_nodes: int) -> np.ndarray:
    """
    Normalizes a scalar or an N x N array into an activation matrix with
    entries in [0, 1]. Entries off the support are carried along but never used.
    """
    if np.isscalar(p_active):
        matrix = np.full((n_nodes, n_nodes), float(p_active))
    else:
        matrix = np.asarray(p_active, dtype=float)
        if matrix.shape != (n_nodes, n_nodes):
            raise DimensionError(f"P_ac must be {n_nodes}x{n_nodes}, got {matrix.shape}")
        matrix = matrix.copy()
    if not np.all(np.isfinite(matrix)) or np.any(matrix < 0.0) or np.any(matrix > 1.0):
        raise InputError("Activation probabilities must lie in [0, 1]")
    return matrix


def max_spectral_norm(shifts: Sequence[np.ndarray]) -> float:
    """max_i ||S_i||_2 over a shift sequence."""
    return max(spectral_norm(shift) for shift in check_shift_list(shifts))


def resolve_rho(shifts: Sequence[np.ndarray], rho: Optional[float] = None) -> float:
    """
    Returns rho, computing max_i ||S_i||_2 when it is None.

    Raises:
        BoundValidationError: `rho` is smaller than an actual ||S_i||_2.
    """
    actual = max_spectral_norm(shifts)
    if rho is None:
        return actual
    rho = float(rho)
    if rho <= 0:
        raise BoundValidationError(f"rho must be positive, got {rho}")
    if rho < actual * (1.0 - RHO_SLACK):
        raise BoundValidationError(f"rho={rho:.6g} is below max_i ||S_i||_2 = {actual:.6g}")
    return rho


@dataclass(frozen=True)
class FluctuationModel:
    """
    Random edge-fluctuation model: every supported cross-edge is active with
    its own probability, independently across edges and rounds. Self-loops
    never fluctuate.
    """
    p_active: np.ndarray
    seed: int = 0
    rho: Optional[float] = None

    @classmethod
    def uniform(cls, p: float, n_nodes: int, seed: int = 0, rho: Optional[float] = None) -> 'FluctuationModel':
        return cls(p_active=activation_matrix(p, n_nodes), seed=seed, rho=rho)

    def __post_init__(self):
        matrix = np.asarray(self.p_active, dtype=float)
        if matrix.ndim != 2:
            raise DimensionError(f"P_ac must be a square matrix, got shape {matrix.shape}; use FluctuationModel.uniform for scalars")
        object.__setattr__(self, 'p_active', activation_matrix(matrix, matrix.shape[0]))

    @property
    def n_nodes(self) -> int:
        return self.p_active.shape[0]

    def validate_against(self, shifts: Sequence[np.ndarray]) -> float:
        """Checks dimensions and rho against a shift sequence; returns the effective rho."""
        shifts = check_shift_list(shifts)
        if shifts[0].shape[0] != self.n_nodes:
            raise DimensionError(f"Shifts are {shifts[0].shape[0]}x{shifts[0].shape[0]} but P_ac is "
                                 f"{self.n_nodes}x{self.n_nodes}")
        return resolve_rho(shifts, self.rho)
