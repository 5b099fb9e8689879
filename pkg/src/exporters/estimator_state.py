# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Estimator State Exporter Module
License: MIT License

An EstimatorBank is stored as `rff_meta.json` (kernel, D, per-node scales,
lambda, step-size schedule, seed), `graph.txt` and one `beta_i_j.mat` per
pair with 1-based labels. Pretrained banks add one `pretrained_i_j.mat` per
pair holding the per-round coefficient rows. The frequency matrices are not stored: they are
redrawn from the seed.
"""

import json
import logging
import os

from src.errors import InputError
from src.estimator.bank import EstimatorBank
from src.estimator.kernels import Kernel
from .graph_file import read_graph, write_graph
from .matrix import read_matrix, read_signal, write_matrix

logger = logging.getLogger(__name__)

META_FILE = 'rff_meta.json'
GRAPH_FILE = 'graph.txt'


def beta_file_name(owner: int, neighbor: int) -> str:
    return f"beta_{owner + 1}_{neighbor + 1}.mat"


def pretrained_file_name(owner: int, neighbor: int) -> str:
    return f"pretrained_{owner + 1}_{neighbor + 1}.mat"


def write_estimator_bank(directory: str, bank: EstimatorBank) -> str:
    """Persists all coefficient vectors and the settings needed to rebuild the bank."""
    os.makedirs(directory, exist_ok=True)
    write_graph(os.path.join(directory, GRAPH_FILE), bank.topology)
    rounds = 0
    for owner, neighbor in bank.pairs():
        estimator = bank.estimators[(owner, neighbor)]
        write_matrix(os.path.join(directory, beta_file_name(owner, neighbor)), estimator.beta)
        if estimator.schedule is not None:
            write_matrix(os.path.join(directory, pretrained_file_name(owner, neighbor)), estimator.schedule)
            rounds = estimator.rounds
    meta = {
        'kernel': bank.kernel_name,
        'D': bank.features,
        'scales': {str(node + 1): scale for node, scale in sorted(bank.scales.items())},
        'lambda': bank.lam,
        'eta': bank.eta,
        'eta_schedule': 'inverse-sqrt' if bank.eta_decay else 'constant',
        'seed': bank.seed,
        'pretrained': bank.pretrained,
        'pretrain_samples': bank.pretrain_samples,
        'pretrained_rounds': rounds,
        'signal_model': bank.signal_model,
    }
    with open(os.path.join(directory, META_FILE), 'w', encoding='utf-8') as handle:
        json.dump(meta, handle, indent=2, sort_keys=True)
        handle.write('\n')
    logger.info(f"Saved {len(bank.estimators)} estimators to {directory}")
    return directory


def read_estimator_bank(directory: str) -> EstimatorBank:
    """Rebuilds a bank written by `write_estimator_bank`."""
    meta_path = os.path.join(directory, META_FILE)
    if not os.path.isfile(meta_path):
        raise InputError(f"Estimator directory has no {META_FILE}: {directory}")
    try:
        with open(meta_path, 'r', encoding='utf-8') as handle:
            meta = json.load(handle)
        scales = {int(node) - 1: float(scale) for node, scale in meta['scales'].items()}
        kernel = Kernel(name=meta['kernel'])
        features, seed = int(meta['D']), int(meta['seed'])
    except (ValueError, KeyError, TypeError) as e:
        raise InputError(f"Malformed {meta_path}: {e}") from e

    topology = read_graph(os.path.join(directory, GRAPH_FILE))
    bank = EstimatorBank.create(topology, features=features, kernel=kernel, lam=float(meta['lambda']),
                                eta=meta.get('eta'), eta_decay=meta.get('eta_schedule') == 'inverse-sqrt',
                                seed=seed, scales=scales or None)
    rounds = int(meta.get('pretrained_rounds', 0))
    for owner, neighbor in bank.pairs():
        estimator = bank.estimators[(owner, neighbor)]
        estimator.beta = read_signal(os.path.join(directory, beta_file_name(owner, neighbor)))
        if rounds:
            schedule = read_matrix(os.path.join(directory, pretrained_file_name(owner, neighbor)))
            if schedule.shape != (rounds, 2 * features):
                raise InputError(f"Pretrained rows of pair ({owner + 1}, {neighbor + 1}) are {schedule.shape}, "
                                 f"expected {(rounds, 2 * features)}")
            estimator.schedule = schedule
    bank.pretrained = bool(meta.get('pretrained', False))
    bank.pretrain_samples = int(meta.get('pretrain_samples', 0))
    bank.signal_model = meta.get('signal_model')
    return bank
