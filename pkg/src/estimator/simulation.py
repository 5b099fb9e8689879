# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Imputing Simulation Module
License: MIT License

Successive protocol in which every lost neighbor value is replaced by the
receiving node's estimate, with one online update per received value. The
same loop serves random link failures and deliberate sparsification.

Per round l and node i: values that arrive are used as is and become the
training target of the (i, j) estimator; lost values are predicted from the
feature vector built from i's view of x^(l-2). Estimates are never used as
training targets.
"""

import logging
from typing import Callable, Optional, Sequence

import numpy as np

from src.design.objective import prefix_products
from src.errors import InputError
from src.filtering.trace import RunTrace, count_messages
from src.fluctuation.model import activation_matrix
from src.fluctuation.perturbation import sample_activation
from src.utils import as_square_matrix, as_vector, check_shift_list
from .bank import EstimatorBank
from .features import build_feature_vector

logger = logging.getLogger(__name__)

MaskSource = Callable[[int], np.ndarray]


def _check_support(shifts: Sequence[np.ndarray], bank: EstimatorBank):
    allowed = bank.topology.adjacency().astype(bool)
    np.fill_diagonal(allowed, True)
    for index, shift in enumerate(shifts, start=1):
        if np.any(shift[~allowed] != 0.0):
            raise InputError(f"S_{index} uses links that are not edges of the estimator topology")


def run_imputing_protocol(shifts: Sequence[np.ndarray], x: np.ndarray, bank: EstimatorBank, masks: MaskSource,
                          T: Optional[np.ndarray] = None, learn: bool = True) -> RunTrace:
    """
    Core loop shared by simulate_with_estimation and sparsify_run.

    Args:
        shifts (Sequence[np.ndarray]): S_1..S_L.
        x (np.ndarray): Input signal.
        bank (EstimatorBank): Estimators; updated in place.
        masks (MaskSource): Returns the N x N activation mask of round l.
        T (np.ndarray): Optional target for the per-iterate errors.
        learn (bool): Apply online updates.

    Returns:
        RunTrace: Iterates, imputed masks and message counts.
    """
    shifts = check_shift_list(shifts, size=bank.topology.n_nodes)
    _check_support(shifts, bank)
    topology = bank.topology
    n_nodes = topology.n_nodes
    y = as_vector(x, name='x', size=n_nodes)

    links = topology.cross_links()
    # view[i] is node i's knowledge of the previous iterate
    view = np.diag(y)
    iterates, imputed = [y.copy()], []
    sent = full = 0
    for round_index, shift in enumerate(shifts, start=1):
        active = masks(round_index)
        round_sent, round_full = count_messages(links, active)
        sent += round_sent
        full += round_full
        new_view = np.diag(y)
        lost = np.zeros((n_nodes, n_nodes), dtype=bool)
        usable = bank.pretrained or round_index >= 2
        for owner in range(n_nodes):
            neighbors = topology.in_neighbors(owner)
            for neighbor in neighbors:
                estimator = bank.estimators[(owner, neighbor)]
                u = None
                if usable:
                    u = build_feature_vector(owner, neighbor, neighbors, view[owner], round_index,
                                             pretrained=bank.pretrained).u
                if active[owner, neighbor]:
                    value = y[neighbor]
                    if learn and u is not None:
                        estimator.ogd_step(u, value, round_index=round_index)
                else:
                    lost[owner, neighbor] = True
                    # without a usable estimator the previous view (0 for neighbors) stands in
                    value = estimator.predict(u, round_index) if u is not None else view[owner, neighbor]
                new_view[owner, neighbor] = value
        y = (shift * new_view).sum(axis=1)
        view = new_view
        iterates.append(y)
        imputed.append(lost)

    trace = RunTrace(iterates=iterates, imputed=imputed, messages_sent=sent,
                     messages_full=full)
    trace.deviation = y - prefix_products(shifts)[-1] @ iterates[0]
    if T is not None:
        target = as_square_matrix(T, name='T', size=n_nodes) @ iterates[0]
        trace.errors = np.array([np.linalg.norm(target - iterate) for iterate in iterates])
    logger.debug(f"Imputing run: {trace.imputed_count} values imputed, {sent}/{trace.messages_full} messages sent")
    return trace


def simulate_with_estimation(shifts: Sequence[np.ndarray], p_active, x: np.ndarray, estimators: EstimatorBank,
                             rng: np.random.Generator, T: Optional[np.ndarray] = None,
                             learn: bool = True) -> RunTrace:
    """
    Fluctuating execution with estimated substitutes for lost values. Links
    are drawn exactly as in run_fluctuating, so the same generator state gives
    the same drops.
    """
    p_active = activation_matrix(p_active, estimators.topology.n_nodes)
    return run_imputing_protocol(shifts, x, estimators, lambda _: sample_activation(p_active, rng), T=T, learn=learn)


def sparsify_run(shifts: Sequence[np.ndarray], drop_rate: float, x: np.ndarray, estimators: EstimatorBank,
                 rng: np.random.Generator, freeze_after: Optional[int] = None,
                 T: Optional[np.ndarray] = None, learn: bool = True) -> RunTrace:
    """
    Deliberately drops each incoming cross-edge with probability `drop_rate`
    in every round and imputes the missing values. After round
    `freeze_after` (1-based) no cross-edge message is sent at all.

    Returns:
        RunTrace: With messages_sent / messages_full and message_savings.
    """
    if not 0.0 <= float(drop_rate) < 1.0:
        raise InputError(f"drop_rate must lie in [0, 1), got {drop_rate}")
    n_nodes = estimators.topology.n_nodes
    if freeze_after is not None and int(freeze_after) < 0:
        raise InputError(f"freeze_after must be nonnegative, got {freeze_after}")
    p_active = activation_matrix(1.0 - float(drop_rate), n_nodes)
    silent = np.eye(n_nodes, dtype=bool)

    def masks(round_index: int) -> np.ndarray:
        if freeze_after is not None and round_index > int(freeze_after):
            return silent
        return sample_activation(p_active, rng)

    trace = run_imputing_protocol(shifts, x, estimators, masks, T=T, learn=learn)
    logger.debug(f"Sparsified run (drop_rate={drop_rate}, freeze_after={freeze_after}): "
                 f"savings {trace.message_savings:.3f}")
    return trace
