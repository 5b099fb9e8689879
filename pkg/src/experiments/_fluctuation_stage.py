# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Fluctuation Stages Module
License: MIT License

The `fluctuate` task (empirical MSE against the bound, one row per P_ac
source) and the `bound` task (all bound variants from one set of
trajectories).
"""

import logging
import os
import sys

from src.cli.config_loader import ExperimentConfig
from src.config import Config
from src.design.bcd import ShiftSequence
from src.exporters.activation_file import load_activation
from src.exporters.csv_table import write_csv
from src.fluctuation.analysis import BOUND_VARIANTS, MEAN_TERMS, bound_from_statistics, evaluate_fluctuation
from src.fluctuation.model import FluctuationModel, resolve_rho
from src.fluctuation.monte_carlo import run_monte_carlo
from ._inputs import input_signal


def _show_progress() -> bool:
    return Config.SHOW_PROGRESS and sys.stderr.isatty()


def fluctuate_stage(config: ExperimentConfig, sequence: ShiftSequence, local_logger: logging.Logger) -> dict:
    """
    Writes fluctuation.csv with columns p_active, trials, mse, mse_stderr,
    bound, bound_stderr, rho, expected_trace_psi and the mean deviation norm
    after every round.
    """
    x = input_signal(config, sequence.n_nodes)
    spec = config.fluctuation
    header = ['p_active', 'trials', 'mse', 'mse_stderr', 'bound', 'bound_stderr', 'rho', 'expected_trace_psi']
    header += [f"deviation_{index}" for index in range(1, sequence.L + 1)]
    rows = []
    for source in spec.p_active:
        model = FluctuationModel(load_activation(source, sequence.n_nodes), seed=config.seed, rho=spec.rho)
        report = evaluate_fluctuation(sequence.shifts, model, x, trials=config.trials, workers=config.workers,
                                      variant=spec.variant, mean_term=spec.mean_term,
                                      show_progress=_show_progress())
        local_logger.info(f"P_ac={source}: MSE {report.mse:.6e} (SE {report.mse_stderr:.2e}), "
                          f"bound {report.bound:.6e} (SE {report.bound_stderr:.2e}), rho {report.rho:.6g}")
        rows.append([os.path.basename(source), report.trials, report.mse, report.mse_stderr, report.bound,
                     report.bound_stderr, report.rho, report.expected_trace_psi] + list(report.iteration_deviation))
    path = write_csv(os.path.join(config.out_dir, 'fluctuation.csv'), header, rows)
    return {'rows': len(rows), 'outputs': [path]}


def bound_stage(config: ExperimentConfig, sequence: ShiftSequence, local_logger: logging.Logger) -> dict:
    """
    Writes bound.csv: for every P_ac source and every (variant, mean_term)
    pair the bound, its standard error, the empirical MSE, and E||z_k||^2.
    """
    x = input_signal(config, sequence.n_nodes)
    rho = resolve_rho(sequence.shifts, config.fluctuation.rho)
    header = ['p_active', 'variant', 'mean_term', 'rho', 'trials', 'mse', 'mse_stderr', 'bound', 'bound_stderr',
              'expected_trace_psi']
    header += [f"deviation_energy_{index}" for index in range(1, sequence.L + 1)]
    rows = []
    for source in config.fluctuation.p_active:
        p_active = load_activation(source, sequence.n_nodes)
        statistics = run_monte_carlo(sequence.shifts, p_active, x, config.trials, config.seed,
                                     workers=config.workers, show_progress=_show_progress())
        energies = list(statistics.mean_q[1:])
        for variant in BOUND_VARIANTS:
            for mean_term in MEAN_TERMS:
                bound, bound_stderr = bound_from_statistics(statistics, rho, variant, mean_term)
                rows.append([os.path.basename(source), variant, mean_term, rho, statistics.trials, statistics.mse,
                             statistics.mse_stderr, bound, bound_stderr, float(statistics.mean_q[0])] + energies)
        local_logger.info(f"P_ac={source}: MSE {statistics.mse:.6e}, E tr(Psi) {statistics.mean_q[0]:.6e}")
    path = write_csv(os.path.join(config.out_dir, 'bound.csv'), header, rows)
    return {'rows': len(rows), 'rho': float(rho), 'outputs': [path]}
