# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Random Fourier Features Module
License: MIT License

The random feature map Delta_W(u) = (1/sqrt(D)) [sin(W^T u), cos(W^T u)],
whose inner products are unbiased estimates of a shift-invariant kernel,
and the closed-form ridge fits used for offline training.
"""

import logging
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from src.errors import DimensionError, InputError, NumericalError
from src.utils import as_vector, substream
from .kernels import Kernel, sample_spectral

logger = logging.getLogger(__name__)


def rff_features(u: np.ndarray, W: np.ndarray) -> np.ndarray:
    """
    Maps u to the unit-norm vector (1/sqrt(D)) [sin(w_1^T u) .. sin(w_D^T u),
    cos(w_1^T u) .. cos(w_D^T u)].
    """
    W = np.asarray(W, dtype=float)
    u = as_vector(u, name='u', size=W.shape[0])
    projection = W.T @ u
    return np.concatenate([np.sin(projection), np.cos(projection)]) / np.sqrt(W.shape[1])


def rff_feature_matrix(U: np.ndarray, W: np.ndarray) -> np.ndarray:
    """Row-wise rff_features for a (K, dim) sample matrix; returns (K, 2D)."""
    W = np.asarray(W, dtype=float)
    U = np.atleast_2d(np.asarray(U, dtype=float))
    if U.shape[1] != W.shape[0]:
        raise DimensionError(f"Samples have dimension {U.shape[1]} but W expects {W.shape[0]}")
    projection = U @ W
    return np.hstack([np.sin(projection), np.cos(projection)]) / np.sqrt(W.shape[1])


@dataclass
class RffModel:
    """Frequency matrix W (dim x D) drawn from `kernel`'s spectral density."""
    W: np.ndarray
    kernel: Kernel
    seed: int = 0

    @classmethod
    def create(cls, dim: int, D: int, kernel: Kernel, seed: int = 0, node: int = 0) -> 'RffModel':
        """Samples W from the (seed, 'estimator', node) substream."""
        W = sample_spectral(D, kernel, dim, substream(seed, 'estimator', node))
        return cls(W=W, kernel=kernel, seed=seed)

    @property
    def D(self) -> int:
        return self.W.shape[1]

    @property
    def dim(self) -> int:
        return self.W.shape[0]

    def features(self, u: np.ndarray) -> np.ndarray:
        return rff_features(u, self.W)

    def feature_matrix(self, U: np.ndarray) -> np.ndarray:
        return rff_feature_matrix(U, self.W)

    def approximate_kernel(self, u: np.ndarray, v: np.ndarray) -> float:
        """Delta_W(u)^T Delta_W(v)."""
        return float(self.features(u) @ self.features(v))


def ridge_closed_form(gram: np.ndarray, lam: float, K: int, y: np.ndarray) -> np.ndarray:
    """
    Solves (Gamma + lam K I) alpha = y.

    Args:
        gram (np.ndarray): Symmetric PSD K x K matrix Gamma.
        lam (float): Regularization (>= 0).
        K (int): Number of training samples.
        y (np.ndarray): Targets.

    Returns:
        np.ndarray: alpha.

    Raises:
        NumericalError: The system is singular (only possible with lam = 0).
    """
    gram = np.asarray(gram, dtype=float)
    y = as_vector(y, name='y', size=gram.shape[0])
    if gram.ndim != 2 or gram.shape[0] != gram.shape[1]:
        raise DimensionError(f"Gram matrix must be square, got {gram.shape}")
    if lam < 0:
        raise InputError(f"lambda must be nonnegative, got {lam}")
    system = gram + lam * K * np.eye(gram.shape[0])
    try:
        with warnings.catch_warnings():
            warnings.simplefilter('error', scipy.linalg.LinAlgWarning)
            alpha = scipy.linalg.solve(system, y, assume_a='pos' if lam > 0 else 'sym')
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgWarning) as e:
        raise NumericalError(f"Ridge system is singular (lambda={lam:g}): {e}") from e
    if not np.all(np.isfinite(alpha)):
        raise NumericalError("Ridge solve produced non-finite coefficients")
    return alpha


def fit_rff_ridge(features: np.ndarray, y: np.ndarray, lam: float) -> np.ndarray:
    """
    Minimizes sum_k (beta^T phi_k - y_k)^2 + lam K ||beta||^2 over the rows
    phi_k of `features` (K x 2D).

    Uses the dual form beta = Phi^T alpha with Gram matrix Phi Phi^T when
    K <= 2D and the primal normal equations otherwise. With lam = 0 and a
    singular system the minimum-norm least-squares solution is returned.
    """
    Phi = np.atleast_2d(np.asarray(features, dtype=float))
    K, width = Phi.shape
    y = as_vector(y, name='y', size=K)
    try:
        if K <= width:
            return Phi.T @ ridge_closed_form(Phi @ Phi.T, lam, K, y)
        if lam > 0:
            system = Phi.T @ Phi + lam * K * np.eye(width)
            return scipy.linalg.solve(system, Phi.T @ y, assume_a='pos')
        beta, *_ = scipy.linalg.lstsq(Phi, y)
        return beta
    except (NumericalError, np.linalg.LinAlgError) as e:
        if lam > 0:
            raise
        logger.debug(f"Unregularized RFF fit is singular, using least squares: {e}")
        beta, *_ = scipy.linalg.lstsq(Phi, y)
        return beta


@dataclass
class ExactKernelRidge:
    """Kernel ridge predictor f(v) = sum_k alpha_k kappa(v - u_k)."""
    samples: np.ndarray
    alpha: np.ndarray
    kernel: Kernel

    def predict(self, U: np.ndarray) -> np.ndarray:
        return self.kernel.gram(U, self.samples) @ self.alpha


def fit_exact_kernel_ridge(samples: np.ndarray, y: np.ndarray, kernel: Kernel, lam: float) -> ExactKernelRidge:
    """Fits alpha = (Gamma + lam K I)^-1 y with the exact kernel matrix Gamma."""
    samples = np.atleast_2d(np.asarray(samples, dtype=float))
    alpha = ridge_closed_form(kernel.gram(samples, samples), lam, samples.shape[0], y)
    return ExactKernelRidge(samples=samples, alpha=alpha, kernel=kernel)
