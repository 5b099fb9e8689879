# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Fluctuation Analysis Module
License: MIT License

Single fluctuating runs, Monte-Carlo deviation moments, the empirical MSE
E||Omega||^2 and its upper bound

    E[tr(Psi)] + 2 sum_{j=2}^{L} rho^(L-j+1) E||z_{j-1}||^2 + E||z_L||^2,

where E||z||^2 = tr(Sigma_z + m_z m_z^T). E[tr(Psi)] and the moments are
estimated jointly from the same trajectories, so the correlation between
successive z_i is preserved.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from src.config import Config
from src.design.objective import prefix_products
from src.errors import InputError
from src.filtering.trace import RunTrace, count_messages, network_links
from src.utils import as_vector, check_shift_list
from .model import FluctuationModel, activation_matrix, resolve_rho
from .moments import DeviationMoments
from .monte_carlo import DeviationStatistics, run_monte_carlo
from .perturbation import sample_activation

logger = logging.getLogger(__name__)

BOUND_VARIANTS = ('stated', 'squared')
MEAN_TERMS = ('outer', 'literal')


@dataclass(frozen=True)
class FluctuationReport:
    """Empirical MSE and its bound from one shared set of trajectories."""
    mse: float
    mse_stderr: float
    bound: float
    bound_stderr: float
    rho: float
    expected_trace_psi: float
    expected_deviation_energy: np.ndarray
    iteration_deviation: np.ndarray
    trials: int
    variant: str = 'stated'
    mean_term: str = 'outer'
    p_active_mean: Optional[float] = field(default=None)

    @property
    def dominated(self) -> bool:
        """True iff mse <= bound within 3 combined standard errors."""
        slack = 3.0 * np.hypot(self.mse_stderr, self.bound_stderr)
        return self.mse <= self.bound + slack


def run_fluctuating(shifts: Sequence[np.ndarray], p_active, x: np.ndarray,
                    rng: np.random.Generator, links: Optional[np.ndarray] = None) -> RunTrace:
    """
    Executes y^(l) = S_hat_l y^(l-1) with a fresh independent draw of every
    link in every round.

    Args:
        shifts (Sequence[np.ndarray]): S_1..S_L.
        p_active: Scalar or N x N activation probabilities.
        x (np.ndarray): Input signal.
        rng (np.random.Generator): Randomness source.
        links (np.ndarray): Cross-edges that carry messages; defaults to the
                            union of the shift supports.

    Returns:
        RunTrace: Iterates, the deviation Omega = y^(L) - S_{L:1} x, the
                  dropped cross-edges per round and the message counts.
    """
    shifts = check_shift_list(shifts)
    n_nodes = shifts[0].shape[0]
    y = as_vector(x, name='x', size=n_nodes)
    p_active = activation_matrix(p_active, n_nodes)
    links = network_links(shifts) if links is None else np.asarray(links, dtype=bool)
    if links.shape != (n_nodes, n_nodes):
        raise InputError(f"links must be {n_nodes}x{n_nodes}, got {links.shape}")

    iterates, dropped_masks = [y.copy()], []
    sent = full = 0
    for shift in shifts:
        active = sample_activation(p_active, rng)
        dropped_masks.append(links & ~active)
        round_sent, round_full = count_messages(links, active)
        sent += round_sent
        full += round_full
        y = np.where(active, shift, 0.0) @ y
        iterates.append(y)

    deviation = y - prefix_products(shifts)[-1] @ iterates[0]
    return RunTrace(iterates=iterates, deviation=deviation, imputed=dropped_masks,
                    messages_sent=sent, messages_full=full)


def _check_trials(trials: int) -> int:
    if int(trials) < 1:
        raise InputError(f"trials must be at least 1, got {trials}")
    return int(trials)


def deviation_moments_mc(shifts: Sequence[np.ndarray], p_active, x: np.ndarray, k_index: int,
                         trials: int = Config.DEFAULT_TRIALS, seed: int = 0,
                         workers: int = Config.DEFAULT_WORKERS) -> DeviationMoments:
    """
    Monte-Carlo mean and covariance of z_k (k_index is 1-based), following
    the perturbed trajectory so that z_k carries the accumulated noise of the
    earlier rounds.
    """
    shifts = check_shift_list(shifts)
    if not 1 <= int(k_index) <= len(shifts):
        raise InputError(f"k_index must lie in 1..{len(shifts)}, got {k_index}")
    statistics = run_monte_carlo(shifts, p_active, x, _check_trials(trials), seed, workers=workers)
    return DeviationMoments(
        mean=statistics.mean_z(k_index),
        cov=statistics.cov_z(k_index),
        trials=statistics.trials,
        mean_stderr=statistics.mean_z_stderr(k_index),
        second_moment_stderr=statistics.second_moment_z_stderr(k_index),
    )


def mse_empirical(shifts: Sequence[np.ndarray], p_active, x: np.ndarray,
                  trials: int = Config.DEFAULT_TRIALS, seed: int = 0,
                  workers: int = Config.DEFAULT_WORKERS) -> float:
    """Average of ||Omega||_2^2 over independent fluctuating runs."""
    statistics = run_monte_carlo(shifts, p_active, x, _check_trials(trials), seed, workers=workers)
    return float(statistics.mse)


def bound_coefficients(L: int, rho: float, variant: str = 'stated') -> np.ndarray:
    """
    Weights c such that bound = c . [E tr(Psi), E||z_1||^2, ..., E||z_L||^2].

    'stated' uses 2 rho^(L-i) for z_i (i < L); 'squared' uses rho^(2(L-i)),
    which holds for any rho because ||S_{L:i+1}||_2^2 <= rho^(2(L-i)).
    """
    if variant not in BOUND_VARIANTS:
        raise InputError(f"Unknown bound variant '{variant}'. Expected one of {', '.join(BOUND_VARIANTS)}")
    coefficients = np.ones(L + 1)
    for i in range(1, L):
        if variant == 'stated':
            coefficients[i] = 2.0 * rho ** (L - i)
        else:
            coefficients[i] = rho ** (2 * (L - i))
    return coefficients


def bound_from_statistics(statistics: DeviationStatistics, rho: float, variant: str = 'stated',
                          mean_term: str = 'outer') -> Tuple[float, float]:
    """
    Assembles the MSE bound and its standard error from Monte-Carlo statistics.

    With mean_term='literal' the m_z term is the entry sum of m_z instead of
    ||m_z||^2; its standard error ignores the (small) extra variance of that term.
    """
    if mean_term not in MEAN_TERMS:
        raise InputError(f"Unknown mean term '{mean_term}'. Expected one of {', '.join(MEAN_TERMS)}")
    L = statistics.L
    coefficients = bound_coefficients(L, rho, variant)
    terms = statistics.mean_q.copy()
    if mean_term == 'literal':
        for k in range(1, L + 1):
            mean = statistics.mean_z(k)
            terms[k] += mean.sum() - mean @ mean
    bound = float(coefficients @ terms)
    variance = max(float(coefficients @ statistics.cov_q @ coefficients), 0.0)
    return bound, float(np.sqrt(variance / statistics.trials))


def mse_bound(shifts: Sequence[np.ndarray], p_active, x: np.ndarray, rho: Optional[float] = None,
              trials_psi: int = Config.DEFAULT_TRIALS, seed: int = 0, workers: int = Config.DEFAULT_WORKERS,
              variant: str = 'stated', mean_term: str = 'outer') -> float:
    """
    Upper bound on E||Omega||^2.

    Args:
        shifts (Sequence[np.ndarray]): S_1..S_L.
        p_active: Scalar or N x N activation probabilities.
        x (np.ndarray): Input signal.
        rho (float): Spectral-norm cap; max_i ||S_i||_2 when None.
        trials_psi (int): Monte-Carlo trials for E[tr(Psi)] and the moments.
        seed (int): Experiment seed. The same seed as mse_empirical reuses
                    the same trajectories.
        workers (int): Worker threads.
        variant (str): 'stated' or 'squared' rho factor.
        mean_term (str): 'outer' (m m^T) or 'literal' (entry sum of m).

    Returns:
        float: The bound.

    Raises:
        BoundValidationError: rho is below an actual ||S_i||_2.
    """
    shifts = check_shift_list(shifts)
    rho = resolve_rho(shifts, rho)
    statistics = run_monte_carlo(shifts, p_active, x, _check_trials(trials_psi), seed, workers=workers)
    bound, _ = bound_from_statistics(statistics, rho, variant, mean_term)
    return bound


def evaluate_fluctuation(shifts: Sequence[np.ndarray], model: FluctuationModel, x: np.ndarray,
                         trials: int = Config.DEFAULT_TRIALS, workers: int = Config.DEFAULT_WORKERS,
                         variant: str = 'stated', mean_term: str = 'outer',
                         show_progress: bool = False) -> FluctuationReport:
    """
    Computes the empirical MSE, the bound, and the per-round deviation norms
    from one Monte-Carlo pass seeded by `model.seed`.
    """
    shifts = check_shift_list(shifts)
    rho = model.validate_against(shifts)
    statistics = run_monte_carlo(shifts, model.p_active, x, _check_trials(trials), model.seed,
                                 workers=workers, show_progress=show_progress)
    bound, bound_stderr = bound_from_statistics(statistics, rho, variant, mean_term)
    report = FluctuationReport(
        mse=statistics.mse,
        mse_stderr=statistics.mse_stderr,
        bound=bound,
        bound_stderr=bound_stderr,
        rho=rho,
        expected_trace_psi=float(statistics.mean_q[0]),
        expected_deviation_energy=statistics.mean_q[1:].copy(),
        iteration_deviation=statistics.mean_iteration_deviation,
        trials=statistics.trials,
        variant=variant,
        mean_term=mean_term,
        p_active_mean=float(model.p_active[~np.eye(model.n_nodes, dtype=bool)].mean()) if model.n_nodes > 1 else 1.0,
    )
    if not report.dominated:
        logger.warning(f"Empirical MSE {report.mse:.6e} exceeds the {variant} bound {report.bound:.6e} "
                       f"beyond Monte-Carlo slack (rho={rho:.6g})")
    return report
