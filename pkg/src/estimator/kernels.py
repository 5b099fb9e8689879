# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Shift-Invariant Kernels Module
License: MIT License

Closed-form shift-invariant kernels and their spectral densities. Each kernel
has a single positive scale s and satisfies kappa(0) = 1:

    gaussian   exp(-||d||_2^2 / (2 s^2))     w ~ Normal(0, s^-2 I)
    laplacian  exp(-||d||_1 / s)             w ~ Cauchy(0, 1/s) per coordinate
    cauchy     prod_k 1 / (1 + d_k^2 / s^2)  w ~ Laplace(0, 1/s) per coordinate
"""

import logging
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import stats
from scipy.spatial.distance import cdist, pdist

from src.errors import DimensionError, InputError
from src.utils import as_vector, substream

logger = logging.getLogger(__name__)

KERNELS = ('gaussian', 'laplacian', 'cauchy')

# Rows used by the median heuristic; larger sample sets are thinned evenly.
MEDIAN_HEURISTIC_ROWS = 1000


@dataclass(frozen=True)
class Kernel:
    """A shift-invariant kernel: `name` in KERNELS and its scale (sigma, b or gamma)."""
    name: str = 'gaussian'
    scale: float = 1.0

    def __post_init__(self):
        if self.name not in KERNELS:
            raise InputError(f"Unsupported kernel '{self.name}'. Expected one of {', '.join(KERNELS)}")
        if not np.isfinite(self.scale) or self.scale <= 0:
            raise InputError(f"Kernel scale must be positive, got {self.scale}")

    def with_scale(self, scale: float) -> 'Kernel':
        return Kernel(name=self.name, scale=float(scale))

    def gram(self, U: np.ndarray, V: np.ndarray) -> np.ndarray:
        """Kernel matrix [kappa(u_a - v_b)] between the rows of U and V."""
        U = np.atleast_2d(np.asarray(U, dtype=float))
        V = np.atleast_2d(np.asarray(V, dtype=float))
        if U.shape[1] != V.shape[1]:
            raise DimensionError(f"Inputs of dimension {U.shape[1]} and {V.shape[1]} cannot be compared")
        if self.name == 'gaussian':
            return np.exp(-cdist(U, V, 'sqeuclidean') / (2.0 * self.scale ** 2))
        if self.name == 'laplacian':
            return np.exp(-cdist(U, V, 'cityblock') / self.scale)
        differences = U[:, None, :] - V[None, :, :]
        return np.prod(1.0 / (1.0 + (differences / self.scale) ** 2), axis=2)

    def spectral_samples(self, dim: int, count: int, rng: np.random.Generator) -> np.ndarray:
        """Draws `count` i.i.d. frequencies as the columns of a (dim, count) matrix."""
        shape = (dim, count)
        if self.name == 'gaussian':
            return stats.norm.rvs(scale=1.0 / self.scale, size=shape, random_state=rng)
        if self.name == 'laplacian':
            return stats.cauchy.rvs(scale=1.0 / self.scale, size=shape, random_state=rng)
        return stats.laplace.rvs(scale=1.0 / self.scale, size=shape, random_state=rng)


def kernel_exact(u: np.ndarray, v: np.ndarray, kernel: Kernel) -> float:
    """Closed-form kappa(u - v)."""
    u = as_vector(u, name='u')
    v = as_vector(v, name='v', size=u.shape[0])
    return float(kernel.gram(u[None, :], v[None, :])[0, 0])


def sample_spectral(D: int, kernel: Kernel, dim: int, seed: Union[int, np.random.Generator] = 0) -> np.ndarray:
    """
    Samples the frequency matrix W = [w_1, ..., w_D] from the kernel's
    spectral density.

    Args:
        D (int): Number of spectral samples (>= 1).
        kernel (Kernel): The kernel.
        dim (int): Dimension of each w_d.
        seed: An integer seed (the 'estimator' substream is used) or a Generator.

    Returns:
        np.ndarray: W of shape (dim, D).
    """
    if int(D) < 1:
        raise InputError(f"The number of spectral samples must be at least 1, got {D}")
    if int(dim) < 1:
        raise DimensionError(f"Feature dimension must be at least 1, got {dim}")
    rng = seed if isinstance(seed, np.random.Generator) else substream(seed, 'estimator')
    return kernel.spectral_samples(int(dim), int(D), rng)


def median_heuristic(samples: np.ndarray, kernel_name: str = 'gaussian') -> float:
    """
    Median pairwise distance between sample rows (L1 for the Laplacian
    kernel, L2 otherwise). Returns 1.0 when all samples coincide.
    """
    samples = np.atleast_2d(np.asarray(samples, dtype=float))
    if samples.shape[0] > MEDIAN_HEURISTIC_ROWS:
        rows = np.linspace(0, samples.shape[0] - 1, MEDIAN_HEURISTIC_ROWS).astype(int)
        samples = samples[rows]
    if samples.shape[0] < 2:
        return 1.0
    distances = pdist(samples, 'cityblock' if kernel_name == 'laplacian' else 'euclidean')
    median = float(np.median(distances))
    if not np.isfinite(median) or median <= 0.0:
        logger.debug("Median heuristic found no spread in the samples; using scale 1.0")
        return 1.0
    return median
