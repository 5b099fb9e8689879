# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Neighbor Estimator Module
License: MIT License

One online estimator per ordered (node, neighbor) pair. Node i predicts the
value it expected from neighbor j in round l as beta_l^T Delta_W(u) and
refines the coefficients with one online gradient step on

    C(beta_l) = (beta_l^T Delta_W(u) - target)^2 + lambda ||beta_l||^2

whenever the true value arrives. beta_l is the online vector `beta` plus,
after offline pretraining, the pretrained coefficients of round l (the
`schedule`). Steps only move `beta`, so what is learned in one round carries
over to the next. A step touches O(D) numbers and no sample history is
stored.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.errors import DimensionError, EstimatorDivergenceError, InputError
from .rff import RffModel

logger = logging.getLogger(__name__)


def default_step_size(D: int) -> float:
    """eta = 0.1 / sqrt(D)."""
    return 0.1 / np.sqrt(D)


@dataclass
class NeighborEstimator:
    """
    Estimator owned by node `owner` for the values of neighbor `neighbor`.
    The RffModel is shared by all estimators of the same owner; `schedule`
    holds one pretrained row per round and is never modified online.
    """
    owner: int
    neighbor: int
    model: RffModel
    beta: np.ndarray = None
    eta: Optional[float] = None
    lam: float = 1e-4
    eta_decay: bool = False
    frozen: bool = False
    updates: int = 0
    schedule: Optional[np.ndarray] = None

    def __post_init__(self):
        width = 2 * self.model.D
        if self.beta is None:
            self.beta = np.zeros(width)
        self.beta = np.asarray(self.beta, dtype=float).reshape(-1)
        if self.beta.shape[0] != width:
            raise DimensionError(f"beta must have length 2D={width}, got {self.beta.shape[0]}")
        if self.schedule is not None:
            self.schedule = np.atleast_2d(np.asarray(self.schedule, dtype=float))
            if self.schedule.shape[1] != width:
                raise DimensionError(f"Pretrained rows must have length 2D={width}, got {self.schedule.shape[1]}")
        if self.eta is None:
            self.eta = default_step_size(self.model.D)
        if self.lam < 0:
            raise InputError(f"lambda must be nonnegative, got {self.lam}")

    @property
    def rounds(self) -> int:
        """Number of pretrained rounds (0 without pretraining)."""
        return 0 if self.schedule is None else self.schedule.shape[0]

    def coefficients(self, round_index: Optional[int] = None) -> np.ndarray:
        """
        beta_l. Rounds past the pretrained horizon use its last row; without a
        round index the first row is used.
        """
        if self.schedule is None:
            return self.beta
        row = min(max(int(round_index or 1), 1), self.rounds) - 1
        return self.beta + self.schedule[row]

    def step_size(self, round_index: Optional[int] = None) -> float:
        """eta_l: constant, or eta / sqrt(l) with decay enabled."""
        if self.eta_decay and round_index:
            return self.eta / np.sqrt(round_index)
        return self.eta

    def predict(self, u: np.ndarray, round_index: Optional[int] = None) -> float:
        """beta_l^T Delta_W(u)."""
        return float(self.coefficients(round_index) @ self.model.features(u))

    def cost(self, u: np.ndarray, target: float, round_index: Optional[int] = None) -> float:
        coefficients = self.coefficients(round_index)
        residual = float(coefficients @ self.model.features(u)) - target
        return residual ** 2 + self.lam * float(coefficients @ coefficients)

    def gradient(self, u: np.ndarray, target: float, round_index: Optional[int] = None) -> np.ndarray:
        """dC/dbeta = 2 (beta_l^T Delta - target) Delta + 2 lambda beta_l."""
        coefficients = self.coefficients(round_index)
        delta = self.model.features(u)
        return 2.0 * (coefficients @ delta - target) * delta + 2.0 * self.lam * coefficients

    def ogd_step(self, u: np.ndarray, target: float, eta: Optional[float] = None,
                 round_index: Optional[int] = None) -> 'NeighborEstimator':
        """
        One online gradient step towards `target`. Frozen estimators are left
        unchanged.

        Raises:
            EstimatorDivergenceError: The update produced non-finite coefficients.
        """
        if self.frozen:
            return self
        step = self.step_size(round_index) if eta is None else float(eta)
        if step <= 0:
            raise InputError(f"Step size must be positive, got {step}")
        updated = self.beta - step * self.gradient(u, target, round_index)
        if not np.all(np.isfinite(updated)):
            raise EstimatorDivergenceError(
                f"Estimator ({self.owner}, {self.neighbor}) diverged after {self.updates} updates "
                f"(eta={step:g}, target={target!r}, |beta|={np.linalg.norm(self.beta):.3e})")
        self.beta = updated
        self.updates += 1
        return self

    def copy(self) -> 'NeighborEstimator':
        """Independent copy sharing the (read-only) RffModel and pretrained rows."""
        return NeighborEstimator(owner=self.owner, neighbor=self.neighbor, model=self.model,
                                 beta=self.beta.copy(), eta=self.eta, lam=self.lam, eta_decay=self.eta_decay,
                                 frozen=self.frozen, updates=self.updates, schedule=self.schedule)


def predict(estimator: NeighborEstimator, u: np.ndarray, round_index: Optional[int] = None) -> float:
    return estimator.predict(u, round_index)


def ogd_step(estimator: NeighborEstimator, u: np.ndarray, target: float, eta: Optional[float] = None,
             round_index: Optional[int] = None) -> NeighborEstimator:
    return estimator.ogd_step(u, target, eta=eta, round_index=round_index)
