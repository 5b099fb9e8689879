# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Offline Pretraining Module
License: MIT License

Runs random input signals through the loss-free successive protocol, records
for every (node, neighbor) pair and every round the feature vectors and the
values that arrived, and fits one coefficient vector per round by closed-form
ridge regression in the random-feature space. The map from a node's view to
its neighbor's next value changes with the shift of each round, so the rounds
are fitted separately.
"""

import logging
from typing import Dict, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from src.config import Config
from src.errors import DimensionError, InputError
from src.filtering.signals import sample_signals
from src.graph.topology import Topology
from src.utils import check_shift_list, substream
from .bank import EstimatorBank
from .features import feature_order
from .kernels import Kernel, median_heuristic
from .rff import fit_rff_ridge

logger = logging.getLogger(__name__)


class TrainingSamples(NamedTuple):
    """Stacked samples of one pair; `rounds[k]` is the round of row k."""
    U: np.ndarray
    y: np.ndarray
    rounds: np.ndarray

    def round(self, round_index: int) -> Tuple[np.ndarray, np.ndarray]:
        rows = self.rounds == round_index
        return self.U[rows], self.y[rows]


def clean_trajectories(shifts: Sequence[np.ndarray], signals: np.ndarray) -> np.ndarray:
    """Returns Y of shape (K, L+1, N) with Y[:, l] = S_{l:1} x for every signal row."""
    trajectory = [signals]
    for shift in shifts:
        trajectory.append(trajectory[-1] @ shift.T)
    return np.stack(trajectory, axis=1)


def collect_training_samples(topology: Topology, shifts: Sequence[np.ndarray],
                             signals: np.ndarray) -> Dict[Tuple[int, int], TrainingSamples]:
    """
    Builds the samples of every pair (i, j): one row per signal and round l,
    with u taken from node i's view of x^(l-2) and y = x_j^(l-1). In round 1
    the neighbors are not yet known (0) and the own value is x_i^(0), which is
    exactly what the imputing protocol sees in its first round.
    """
    shifts = check_shift_list(shifts, size=topology.n_nodes)
    trajectories = clean_trajectories(shifts, signals)
    count = signals.shape[0]
    round_labels = np.repeat(np.arange(1, len(shifts) + 1), count)
    samples = {}
    for owner in range(topology.n_nodes):
        neighbors = topology.in_neighbors(owner)
        for neighbor in neighbors:
            order = feature_order(owner, neighbor, neighbors)
            rows, targets = [], []
            for round_index in range(1, len(shifts) + 1):
                if round_index == 1:
                    view = np.zeros((count, topology.n_nodes))
                    view[:, owner] = trajectories[:, 0, owner]
                else:
                    view = trajectories[:, round_index - 2]
                rows.append(view[:, order])
                targets.append(trajectories[:, round_index - 1, neighbor])
            samples[(owner, neighbor)] = TrainingSamples(np.vstack(rows), np.concatenate(targets), round_labels)
    return samples


def offline_pretrain(topology: Topology, shifts: Sequence[np.ndarray], kernel: Union[str, Kernel] = 'gaussian',
                     K_samples: int = Config.PRETRAIN_SAMPLES, seed: int = 0,
                     features: int = Config.ESTIMATOR_FEATURES, lam: float = Config.ESTIMATOR_LAMBDA,
                     eta: Optional[float] = None, eta_decay: bool = False,
                     rng: Optional[np.random.Generator] = None, signal_model: str = Config.SIGNAL_MODEL,
                     signal_noise: float = Config.SIGNAL_NOISE) -> EstimatorBank:
    """
    Initializes all estimators from K random input signals. Every estimator
    gets one pretrained row per round and an online correction of zero.

    Args:
        topology (Topology): The network.
        shifts (Sequence[np.ndarray]): The designed shifts S_1..S_L.
        kernel: A kernel name (scale from the median heuristic per node) or a
                Kernel with a fixed scale.
        K_samples (int): Number of training signals (>= 1).
        seed (int): Seeds the frequency draws and, without `rng`, the signals.
        features (int): Number of spectral samples D.
        lam (float): Ridge regularization.
        eta (float): Online step size of the returned bank.
        eta_decay (bool): Decaying online step size.
        rng (np.random.Generator): Source of the training signals.
        signal_model (str): Distribution of the training signals, see
                            src.filtering.signals.
        signal_noise (float): Sensor noise of the 'field' model.

    Returns:
        EstimatorBank: Pretrained bank.
    """
    if int(K_samples) < 1:
        raise InputError(f"Pretraining needs at least one sample, got {K_samples}")
    shifts = check_shift_list(shifts)
    if shifts[0].shape[0] != topology.n_nodes:
        raise DimensionError(f"Shifts are {shifts[0].shape[0]}x{shifts[0].shape[0]} "
                             f"but the topology has {topology.n_nodes} nodes")
    rng = substream(seed, 'data') if rng is None else rng
    signals = sample_signals(int(K_samples), topology.n_nodes, rng, signal_model, signal_noise)
    samples = collect_training_samples(topology, shifts, signals)

    scales = None
    if isinstance(kernel, str):
        scales = {}
        for owner in range(topology.n_nodes):
            rows = [samples[(owner, neighbor)].U for neighbor in topology.in_neighbors(owner)]
            if rows:
                scales[owner] = median_heuristic(np.vstack(rows), kernel)
        logger.debug(f"Median-heuristic kernel scales: {scales}")
    bank = EstimatorBank.create(topology, features=features, kernel=kernel, lam=lam, eta=eta,
                                eta_decay=eta_decay, seed=seed, scales=scales)

    for pair in bank.pairs():
        estimator = bank.estimators[pair]
        schedule = []
        for round_index in range(1, len(shifts) + 1):
            U, targets = samples[pair].round(round_index)
            schedule.append(fit_rff_ridge(estimator.model.feature_matrix(U), targets, lam))
        estimator.schedule = np.vstack(schedule)
        estimator.beta = np.zeros_like(estimator.beta)
    bank.pretrained = True
    bank.pretrain_samples = int(K_samples)
    bank.signal_model = signal_model
    logger.info(f"Pretrained {len(bank.estimators)} estimators on {K_samples} '{signal_model}' signals "
                f"x {len(shifts)} rounds")
    return bank
