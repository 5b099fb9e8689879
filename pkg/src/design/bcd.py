# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Block Coordinate Descent Module
License: MIT License

Designs S_1..S_L by cyclically solving each block subproblem (j = 1..L) until
the relative change of the stopping cost falls below epsilon.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from src.config import Config
from src.errors import ConvergenceError, InputError, NumericalError, SingularBlockError
from src.fluctuation.spectral import spectral_norm
from src.graph.topology import SupportBasis, Topology, build_support_basis
from src.utils import as_square_matrix, substream
from .block_solver import solve_block
from .config import DesignConfig
from .objective import objective, per_round_errors, prefix_products, unweighted_objective

logger = logging.getLogger(__name__)

# Below this fraction of ||T||_F^2 the stopping cost counts as an exact fit.
EXACT_FIT_TOLERANCE = 1e-28


@dataclass
class ShiftSequence:
    """
    Designed shifts S_1..S_L with the metadata of the run that produced them.
    `objective_history` holds the weighted cost after every sweep and is
    nonincreasing; `unweighted_history` holds the equal-emphasis cost.
    """
    shifts: List[np.ndarray]
    topology: Topology
    weights: tuple
    objective_history: List[float] = field(default_factory=list)
    unweighted_history: List[float] = field(default_factory=list)
    per_round_error: np.ndarray = field(default_factory=lambda: np.zeros(0))
    sweeps: int = 0
    converged: bool = False
    epsilon: float = Config.DESIGN_EPSILON
    seed: int = 0
    init_scheme: str = 'scaled-random'
    init_scale: float = 1.0
    stop_on: str = 'unweighted'

    @property
    def L(self) -> int:
        return len(self.shifts)

    @property
    def n_nodes(self) -> int:
        return self.topology.n_nodes

    def product(self, rounds: Optional[int] = None) -> np.ndarray:
        """Returns S_{rounds:1} (all rounds by default)."""
        rounds = self.L if rounds is None else rounds
        return prefix_products(self.shifts[:rounds])[-1]


def initialize_shifts(basis: SupportBasis, L: int, scheme: str, seed: int, scale: float = 1.0) -> List[np.ndarray]:
    """
    Initial S_1..S_L. S_1 is a zero placeholder because it is solved first.
    'scaled-random': uniform(-1, 1) on the support, rescaled to spectral norm
    `scale`. 'identity-like': `scale` times the identity on the diagonal
    support (falls back to scaled-random without self-loops).
    """
    rng = substream(seed, 'design-init')
    diagonal = basis.rows == basis.cols
    if scheme == 'identity-like' and not np.any(diagonal):
        logger.warning("identity-like initialization needs self-loops; falling back to scaled-random.")
        scheme = 'scaled-random'

    shifts = [np.zeros((basis.n_nodes, basis.n_nodes))]
    for _ in range(1, L):
        if scheme == 'identity-like':
            shift = basis.to_matrix(diagonal.astype(float)) * scale
        else:
            shift = basis.to_matrix(rng.uniform(-1.0, 1.0, size=basis.e_count))
            norm = spectral_norm(shift)
            if norm > 0:
                shift *= scale / norm
        shifts.append(shift)
    return shifts


def _solve_with_retry(j: int, shifts: Sequence[np.ndarray], T: np.ndarray, weights: Sequence[float],
                      basis: SupportBasis, ridge: float) -> np.ndarray:
    try:
        return solve_block(j, shifts, T, weights, basis, ridge=ridge)
    except SingularBlockError as e:
        retry_ridge = Config.RIDGE_RETRY_FACTOR * e.trace / max(e.e_count, 1)
        if retry_ridge <= ridge:
            retry_ridge = max(ridge * 10.0, Config.RIDGE_RETRY_FACTOR)
        logger.debug(f"Block {j} singular ({e}); retrying with ridge {retry_ridge:.3g}")
        return solve_block(j, shifts, T, weights, basis, ridge=retry_ridge)


def bcd_design(T: np.ndarray, topology: Topology, config: DesignConfig,
               local_logger: Optional[logging.Logger] = None) -> ShiftSequence:
    """
    Runs block coordinate descent on the weighted successive cost.

    Each sweep solves blocks j = 1..L in order. A block update is kept only if
    it does not raise the weighted cost, so the recorded history is
    nonincreasing even after a ridge retry. The loop stops when the relative
    change of the stopping cost is below `config.epsilon`, when that cost is
    an exact zero fit, or after `config.max_bcd_sweeps` sweeps.

    Args:
        T (np.ndarray): N x N target transformation.
        topology (Topology): Network topology with N nodes.
        config (DesignConfig): Design parameters.
        local_logger (logging.Logger): Optional session logger.

    Returns:
        ShiftSequence: The designed shifts and run metadata.

    Raises:
        ConvergenceError: The sweep cap was reached and the configuration
                          requires convergence.
    """
    log = local_logger or logger
    T = as_square_matrix(T, name='T')
    if T.shape[0] != topology.n_nodes:
        raise InputError(f"T is {T.shape[0]}x{T.shape[0]} but the topology has {topology.n_nodes} nodes")

    basis = build_support_basis(topology)
    weights = config.weights
    shifts = initialize_shifts(basis, config.L, config.init_scheme, config.seed, config.init_scale)
    exact_fit = EXACT_FIT_TOLERANCE * max(float(np.sum(T ** 2)), np.finfo(float).tiny)
    log.info(f"Starting BCD design: N={topology.n_nodes}, E={basis.e_count}, L={config.L}, "
             f"epsilon={config.epsilon:g}, max_sweeps={config.max_bcd_sweeps}")

    sequence = ShiftSequence(shifts=shifts, topology=topology, weights=weights, epsilon=config.epsilon,
                             seed=config.seed, init_scheme=config.init_scheme, init_scale=config.init_scale,
                             stop_on=config.stop_on)
    current = objective(T, shifts, weights)
    previous_stop = None
    for sweep in range(1, config.max_bcd_sweeps + 1):
        for j in range(1, config.L + 1):
            coefficients = _solve_with_retry(j, shifts, T, weights, basis, config.ridge)
            candidate = list(shifts)
            candidate[j - 1] = basis.to_matrix(coefficients)
            candidate_cost = objective(T, candidate, weights)
            if candidate_cost <= current:
                shifts, current = candidate, candidate_cost

        weighted = current
        unweighted = unweighted_objective(T, shifts)
        if not (np.isfinite(weighted) and np.isfinite(unweighted)):
            raise NumericalError(f"Non-finite objective after sweep {sweep} (weighted={weighted}, unweighted={unweighted})")
        sequence.objective_history.append(weighted)
        sequence.unweighted_history.append(unweighted)
        sequence.sweeps = sweep
        stop_cost = unweighted if config.stop_on == 'unweighted' else weighted
        log.debug(f"Sweep {sweep}: weighted={weighted:.6e}, unweighted={unweighted:.6e}")

        if stop_cost <= exact_fit:
            sequence.converged = True
            break
        if previous_stop is not None and abs(stop_cost - previous_stop) / abs(previous_stop) < config.epsilon:
            sequence.converged = True
            break
        previous_stop = stop_cost

    if not sequence.converged:
        message = f"BCD stopped at the sweep cap ({config.max_bcd_sweeps}) before reaching epsilon={config.epsilon:g}."
        if config.require_convergence:
            raise ConvergenceError(message)
        log.warning(message)
    sequence.shifts = shifts
    sequence.per_round_error = per_round_errors(T, shifts)
    log.info(f"BCD finished after {sequence.sweeps} sweeps: weighted objective {sequence.objective_history[-1]:.6e}, "
             f"round-L error {sequence.per_round_error[-1]:.6e}")
    return sequence
