# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Monte-Carlo Engine Module
License: MIT License

Vectorized simulation of the successive protocol under random link drops.

Trials are split into chunks of Config.MC_CHUNK_SIZE. Chunk c draws from the
counter-based stream (seed, stream, c), so every trial's randomness depends
only on the seed and its position, never on the worker count. Each chunk is
reduced to sufficient statistics, and chunks are combined in index order.

Per trial and round l the simulator records z_l = S_tilde_l y^(l-1), so that
y^(l) = S_l y^(l-1) + z_l and Omega = y^(L) - S_{L:1} x = sum_i S_{L:i+1} z_i.
"""

import logging
import sys
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np
from tqdm import tqdm

from src.config import Config
from src.design.objective import prefix_products, product_range
from src.errors import InputError
from src.queue_manager.worker_pool import WorkerPool
from src.utils import as_vector, check_shift_list, substream
from .model import activation_matrix
from .perturbation import sample_activation

logger = logging.getLogger(__name__)


@dataclass
class DeviationStatistics:
    """
    Running sums over trials. `q` collects per trial
    [tr(Psi), ||z_1||^2, ..., ||z_L||^2] where tr(Psi) is the sum of all cross
    terms v_i^T v_k (i != k) of v_i = S_{L:i+1} z_i.
    """
    trials: int
    sum_z: np.ndarray
    sum_zz: np.ndarray
    sum_zz_sq: np.ndarray
    sum_q: np.ndarray
    sum_qq: np.ndarray
    sum_omega: np.ndarray
    sum_omega_sq: float
    sum_omega_sq2: float
    sum_iteration_deviation: np.ndarray

    @classmethod
    def empty(cls, L: int, n_nodes: int) -> 'DeviationStatistics':
        return cls(trials=0, sum_z=np.zeros((L, n_nodes)), sum_zz=np.zeros((L, n_nodes, n_nodes)),
                   sum_zz_sq=np.zeros((L, n_nodes, n_nodes)), sum_q=np.zeros(L + 1),
                   sum_qq=np.zeros((L + 1, L + 1)), sum_omega=np.zeros(n_nodes), sum_omega_sq=0.0,
                   sum_omega_sq2=0.0, sum_iteration_deviation=np.zeros(L))

    def merge(self, other: 'DeviationStatistics') -> 'DeviationStatistics':
        return DeviationStatistics(
            trials=self.trials + other.trials,
            sum_z=self.sum_z + other.sum_z,
            sum_zz=self.sum_zz + other.sum_zz,
            sum_zz_sq=self.sum_zz_sq + other.sum_zz_sq,
            sum_q=self.sum_q + other.sum_q,
            sum_qq=self.sum_qq + other.sum_qq,
            sum_omega=self.sum_omega + other.sum_omega,
            sum_omega_sq=self.sum_omega_sq + other.sum_omega_sq,
            sum_omega_sq2=self.sum_omega_sq2 + other.sum_omega_sq2,
            sum_iteration_deviation=self.sum_iteration_deviation + other.sum_iteration_deviation,
        )

    @property
    def L(self) -> int:
        return self.sum_z.shape[0]

    def mean_z(self, k: int) -> np.ndarray:
        """Sample mean of z_k (1-based)."""
        return self.sum_z[k - 1] / self.trials

    def second_moment_z(self, k: int) -> np.ndarray:
        """Sample E[z_k z_k^T]."""
        return self.sum_zz[k - 1] / self.trials

    def cov_z(self, k: int) -> np.ndarray:
        mean = self.mean_z(k)
        return self.second_moment_z(k) - np.outer(mean, mean)

    def mean_z_stderr(self, k: int) -> np.ndarray:
        variance = np.clip(np.diag(self.cov_z(k)), 0.0, None)
        return np.sqrt(variance / self.trials)

    def second_moment_z_stderr(self, k: int) -> np.ndarray:
        second = self.second_moment_z(k)
        variance = np.clip(self.sum_zz_sq[k - 1] / self.trials - second ** 2, 0.0, None)
        return np.sqrt(variance / self.trials)

    @property
    def mean_q(self) -> np.ndarray:
        return self.sum_q / self.trials

    @property
    def cov_q(self) -> np.ndarray:
        mean = self.mean_q
        return self.sum_qq / self.trials - np.outer(mean, mean)

    @property
    def mse(self) -> float:
        return self.sum_omega_sq / self.trials

    @property
    def mse_stderr(self) -> float:
        variance = max(self.sum_omega_sq2 / self.trials - self.mse ** 2, 0.0)
        return float(np.sqrt(variance / self.trials))

    @property
    def mean_deviation(self) -> np.ndarray:
        """Sample mean of Omega."""
        return self.sum_omega / self.trials

    @property
    def mean_iteration_deviation(self) -> np.ndarray:
        """Mean of ||y^(l) - S_{l:1} x||_2 for l = 1..L."""
        return self.sum_iteration_deviation / self.trials


def simulate_batch(shifts: Sequence[np.ndarray], p_active: np.ndarray, x: np.ndarray, batch: int,
                   rng: np.random.Generator) -> dict:
    """
    Simulates `batch` independent fluctuating runs.

    Returns:
        dict: 'z' (batch, L, N) deviations per round, 'final' (batch, N) outputs
              y^(L), and 'iteration_deviation' (batch, L) norms.
    """
    L, n_nodes = len(shifts), x.shape[0]
    clean = prefix_products(shifts)
    y = np.tile(x, (batch, 1))
    z_all = np.empty((batch, L, n_nodes))
    iteration_deviation = np.empty((batch, L))
    for l, shift in enumerate(shifts):
        active = sample_activation(p_active, rng, batch=batch)
        dropped = np.where(active, 0.0, shift)
        z = -np.einsum('bij,bj->bi', dropped, y)
        y = y @ shift.T + z
        z_all[:, l] = z
        iteration_deviation[:, l] = np.linalg.norm(y - clean[l] @ x, axis=1)
    return {'z': z_all, 'final': y, 'iteration_deviation': iteration_deviation}


def _batch_statistics(shifts: Sequence[np.ndarray], run: dict) -> DeviationStatistics:
    z = run['z']
    batch, L, n_nodes = z.shape
    # v_i = S_{L:i+1} z_i
    v = np.stack([z[:, i] @ product_range(shifts, L, i + 2).T for i in range(L)], axis=1)
    v_total = v.sum(axis=1)
    v_sq = np.einsum('bin,bin->bi', v, v)
    tr_psi = np.einsum('bn,bn->b', v_total, v_total) - v_sq.sum(axis=1)
    z_sq = np.einsum('bin,bin->bi', z, z)
    q = np.column_stack([tr_psi, z_sq])

    omega = v_total
    omega_sq = np.einsum('bn,bn->b', omega, omega)
    zz = np.einsum('bia,bic->biac', z, z)
    return DeviationStatistics(
        trials=batch,
        sum_z=z.sum(axis=0),
        sum_zz=zz.sum(axis=0),
        sum_zz_sq=(zz ** 2).sum(axis=0),
        sum_q=q.sum(axis=0),
        sum_qq=q.T @ q,
        sum_omega=omega.sum(axis=0),
        sum_omega_sq=float(omega_sq.sum()),
        sum_omega_sq2=float((omega_sq ** 2).sum()),
        sum_iteration_deviation=run['iteration_deviation'].sum(axis=0),
    )


def chunk_sizes(trials: int, chunk_size: int = None) -> List[int]:
    """Splits `trials` into fixed-size chunks (the last one may be shorter)."""
    chunk_size = int(chunk_size or Config.MC_CHUNK_SIZE)
    full, rest = divmod(int(trials), chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])


def run_monte_carlo(shifts: Sequence[np.ndarray], p_active, x: np.ndarray, trials: int, seed: int,
                    workers: int = 1, stream: str = 'fluctuation', show_progress: bool = False) -> DeviationStatistics:
    """
    Runs `trials` independent fluctuating executions and returns their statistics.

    Args:
        shifts (Sequence[np.ndarray]): S_1..S_L.
        p_active: Scalar or N x N activation probabilities.
        x (np.ndarray): Input signal.
        trials (int): Number of trials (>= 1).
        seed (int): Experiment seed.
        workers (int): Worker threads; does not change the result.
        stream (str): Named substream of `seed`.
        show_progress (bool): Show a tqdm bar on stderr.

    Returns:
        DeviationStatistics: Combined statistics over all trials.
    """
    shifts = check_shift_list(shifts)
    n_nodes = shifts[0].shape[0]
    x = as_vector(x, name='x', size=n_nodes)
    p_active = activation_matrix(p_active, n_nodes)
    if int(trials) < 1:
        raise InputError(f"trials must be at least 1, got {trials}")

    sizes = chunk_sizes(trials)

    def run_chunk(payload):
        index, size = payload
        rng = substream(seed, stream, index)
        return _batch_statistics(shifts, simulate_batch(shifts, p_active, x, size, rng))

    pool = WorkerPool(num_workers=workers, name='MonteCarlo')
    with tqdm(total=len(sizes), desc='Monte-Carlo chunks', file=sys.stderr, leave=False,
              disable=not show_progress) as bar:
        partials = pool.map(run_chunk, list(enumerate(sizes)), on_done=bar.update)

    statistics = DeviationStatistics.empty(len(shifts), n_nodes)
    for partial in partials:
        statistics = statistics.merge(partial)
    logger.debug(f"Monte-Carlo finished: {statistics.trials} trials in {len(sizes)} chunks, "
                 f"MSE={statistics.mse:.6e}")
    return statistics
