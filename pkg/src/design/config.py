# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Design Configuration Module
License: MIT License

Round weights and the immutable configuration of one design run.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from src.config import Config
from src.errors import InputError

logger = logging.getLogger(__name__)

INIT_SCHEMES = ('scaled-random', 'identity-like')
STOP_RULES = ('unweighted', 'weighted')


def default_weights(L: int, scheme: str = 'geometric', ratio: float = 2.0) -> Tuple[float, ...]:
    """
    Builds a normalized, nondecreasing weight vector for L rounds.

    Args:
        L (int): Number of rounds (>= 1).
        scheme (str): 'uniform' (1/L each) or 'geometric' (proportional to ratio**l).
        ratio (float): Growth factor for the geometric scheme, must exceed 1.

    Returns:
        Tuple[float, ...]: Weights summing to one.
    """
    if int(L) < 1:
        raise InputError(f"L must be at least 1, got {L}")
    if scheme == 'uniform':
        raw = np.ones(int(L))
    elif scheme == 'geometric':
        if float(ratio) <= 1.0:
            raise InputError(f"Geometric weights need ratio > 1, got {ratio}")
        raw = float(ratio) ** np.arange(int(L), dtype=float)
    else:
        raise InputError(f"Unknown weight scheme '{scheme}'. Use 'uniform' or 'geometric'.")
    return tuple(float(w) for w in raw / raw.sum())


@dataclass(frozen=True)
class DesignConfig:
    """
    Parameters of one BCD design run. When `weights` is None they are built
    from `weight_scheme`/`weight_ratio`; explicit weights are normalized.
    `stop_on` selects which cost drives the relative-change stopping rule:
    the unweighted per-round sum (default) or the weighted cost the blocks
    minimize. With `require_convergence` a run that hits the sweep cap
    before the stopping rule fires is an error instead of a warning.
    """
    L: int
    weights: Optional[Tuple[float, ...]] = None
    weight_scheme: str = Config.DESIGN_WEIGHT_SCHEME
    weight_ratio: float = Config.DESIGN_WEIGHT_RATIO
    epsilon: float = Config.DESIGN_EPSILON
    max_bcd_sweeps: int = Config.DESIGN_MAX_SWEEPS
    init_scheme: str = 'scaled-random'
    init_scale: float = 1.0
    seed: int = 0
    ridge: float = 0.0
    stop_on: str = 'unweighted'
    require_convergence: bool = False

    def __post_init__(self):
        if int(self.L) < 1:
            raise InputError(f"L must be at least 1, got {self.L}")
        if self.weights is None:
            weights = default_weights(self.L, self.weight_scheme, self.weight_ratio)
        else:
            weights = np.asarray(self.weights, dtype=float)
            if weights.shape != (int(self.L),):
                raise InputError(f"Expected {self.L} weights, got {weights.size}")
            if np.any(weights < 0) or not np.all(np.isfinite(weights)) or weights.sum() <= 0:
                raise InputError(f"Weights must be finite, nonnegative and not all zero: {weights.tolist()}")
            if np.any(np.diff(weights) < 0):
                raise InputError(f"Weights must be nondecreasing: {weights.tolist()}")
            weights = tuple(float(w) for w in weights / weights.sum())
        object.__setattr__(self, 'weights', weights)
        object.__setattr__(self, 'L', int(self.L))

        if self.epsilon <= 0:
            raise InputError(f"epsilon must be positive, got {self.epsilon}")
        if int(self.max_bcd_sweeps) < 1:
            raise InputError(f"max_bcd_sweeps must be positive, got {self.max_bcd_sweeps}")
        if self.init_scheme not in INIT_SCHEMES:
            raise InputError(f"Unknown init scheme '{self.init_scheme}'. Use one of {INIT_SCHEMES}.")
        if self.stop_on not in STOP_RULES:
            raise InputError(f"Unknown stopping rule '{self.stop_on}'. Use one of {STOP_RULES}.")
        if self.ridge < 0:
            raise InputError(f"ridge must be nonnegative, got {self.ridge}")
