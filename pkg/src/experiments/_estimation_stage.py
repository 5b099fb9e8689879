# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Estimation Stages Module
License: MIT License

The `estimate` task (clean run vs. zero imputation vs. estimator imputation
over many seeds) and the `sparsify` task (deliberate link dropping with
message accounting). Every repetition s draws its input signal from the data
stream and its link activations from the (seed, 'fluctuation', s) stream, and
the zero-imputation and estimator runs replay the same activations.
"""

import logging
import os
import sys

import numpy as np
from tqdm import tqdm

from src.cli.config_loader import ExperimentConfig
from src.config import Config
from src.design.bcd import ShiftSequence
from src.estimator.bank import EstimatorBank
from src.estimator.kernels import Kernel
from src.estimator.pretrain import offline_pretrain
from src.estimator.simulation import simulate_with_estimation, sparsify_run
from src.exporters.activation_file import load_activation
from src.exporters.csv_table import write_csv
from src.exporters.estimator_state import write_estimator_bank
from src.filtering.execution import apply_successive
from src.filtering.metrics import relative_error
from src.fluctuation.analysis import run_fluctuating
from src.utils import substream
from ._inputs import trial_signal

ESTIMATOR_SUBDIR = 'estimator'


def prepare_bank(config: ExperimentConfig, sequence: ShiftSequence, local_logger: logging.Logger) -> EstimatorBank:
    """
    Pretrained bank by default; with `pretrain = false` an untrained one, and
    with `frozen = true` an untrained bank that never learns (beta = 0).
    """
    spec = config.estimator
    kernel = Kernel(spec.kernel, spec.scale) if spec.scale is not None else spec.kernel
    if spec.pretrain and not spec.frozen:
        bank = offline_pretrain(sequence.topology, sequence.shifts, kernel=kernel, K_samples=spec.pretrain_samples,
                                seed=config.seed, features=spec.features, lam=spec.lam, eta=spec.eta,
                                eta_decay=spec.eta_decay, signal_model=config.signal_model,
                                signal_noise=config.signal_noise)
    else:
        bank = EstimatorBank.create(sequence.topology, features=spec.features, kernel=kernel, lam=spec.lam,
                                    eta=spec.eta, eta_decay=spec.eta_decay, seed=config.seed)
    if spec.frozen:
        bank.freeze()
    local_logger.info(f"Estimator bank ready: {len(bank.estimators)} pairs, D={bank.features}, "
                      f"kernel={bank.kernel_name}, pretrained={bank.pretrained}, frozen={spec.frozen}")
    return bank


def _repetitions(config: ExperimentConfig, description: str):
    return tqdm(range(config.seeds), desc=description, file=sys.stderr, leave=False,
                disable=not (Config.SHOW_PROGRESS and sys.stderr.isatty()))


def estimate_stage(config: ExperimentConfig, T: np.ndarray, sequence: ShiftSequence,
                   local_logger: logging.Logger) -> dict:
    """
    Writes estimate.csv: per repetition the final relative errors of the clean
    run, zero imputation and estimator imputation, plus a summary row whose
    `rff_wins` column holds the win rate of the estimator over zero imputation.
    """
    bank = prepare_bank(config, sequence, local_logger)
    write_estimator_bank(os.path.join(config.out_dir, ESTIMATOR_SUBDIR), bank)
    p_active = load_activation(config.fluctuation.p_active[0], sequence.n_nodes)

    rows, wins = [], 0
    errors = np.zeros((config.seeds, 3))
    for index in _repetitions(config, 'Imputation runs'):
        x = trial_signal(config, index, sequence.n_nodes)
        clean = relative_error(T, x, apply_successive(sequence.shifts, x).final)
        zero = relative_error(T, x, run_fluctuating(sequence.shifts, p_active, x,
                                                    substream(config.seed, 'fluctuation', index),
                                                    links=sequence.topology.cross_links()).final)
        trace = simulate_with_estimation(sequence.shifts, p_active, x, bank.copy(),
                                         substream(config.seed, 'fluctuation', index))
        imputed = relative_error(T, x, trace.final)
        won = imputed < zero
        wins += int(won)
        errors[index] = (clean, zero, imputed)
        rows.append([index, clean, zero, imputed, int(won), trace.imputed_count])

    win_rate = wins / config.seeds
    means = errors.mean(axis=0)
    rows.append(['summary', means[0], means[1], means[2], win_rate, sum(row[5] for row in rows)])
    path = write_csv(os.path.join(config.out_dir, 'estimate.csv'),
                     ['seed', 'clean_error', 'zero_imputation_error', 'rff_imputation_error', 'rff_wins',
                      'imputed_values'], rows)
    local_logger.info(f"Estimator imputation beat zero imputation in {wins}/{config.seeds} runs "
                      f"(mean errors: clean {means[0]:.4e}, zero {means[1]:.4e}, rff {means[2]:.4e})")
    return {'win_rate': win_rate, 'outputs': [path, os.path.join(config.out_dir, ESTIMATOR_SUBDIR)]}


def sparsify_stage(config: ExperimentConfig, T: np.ndarray, sequence: ShiftSequence,
                   local_logger: logging.Logger) -> dict:
    """
    Writes sparsify.csv: per repetition the messages sent against the full
    protocol, the savings, and the final relative errors of the clean and
    sparsified runs, plus a totals row.
    """
    spec = config.estimator
    bank = prepare_bank(config, sequence, local_logger)
    rows = []
    sent_total = full_total = 0
    errors = np.zeros((config.seeds, 2))
    for index in _repetitions(config, 'Sparsified runs'):
        x = trial_signal(config, index, sequence.n_nodes)
        clean = relative_error(T, x, apply_successive(sequence.shifts, x).final)
        trace = sparsify_run(sequence.shifts, spec.drop_rate, x, bank.copy(),
                             substream(config.seed, 'fluctuation', index), freeze_after=spec.freeze_after)
        sparsified = relative_error(T, x, trace.final)
        sent_total += trace.messages_sent
        full_total += trace.messages_full
        errors[index] = (clean, sparsified)
        rows.append([index, spec.drop_rate, '' if spec.freeze_after is None else spec.freeze_after,
                     trace.messages_sent, trace.messages_full, trace.message_savings, clean, sparsified])

    savings = 1.0 - sent_total / full_total if full_total else 0.0
    means = errors.mean(axis=0)
    rows.append(['summary', spec.drop_rate, '' if spec.freeze_after is None else spec.freeze_after,
                 sent_total, full_total, savings, means[0], means[1]])
    path = write_csv(os.path.join(config.out_dir, 'sparsify.csv'),
                     ['seed', 'drop_rate', 'freeze_after', 'messages_sent', 'messages_full', 'savings',
                      'clean_error', 'sparsified_error'], rows)
    local_logger.info(f"Sparsification sent {sent_total}/{full_total} messages (savings {savings:.3f}), "
                      f"mean error {means[1]:.4e} vs clean {means[0]:.4e}")
    return {'savings': savings, 'outputs': [path]}
