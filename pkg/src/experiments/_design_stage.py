# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Design and Run Stages Module
License: MIT License

The `design` task (BCD design, shift directory, per-round and per-sweep
tables) and the `run` task (loss-free execution with the optional FIR
baseline).
"""

import logging
import os

import numpy as np

from src.cli.config_loader import ExperimentConfig
from src.design.bcd import ShiftSequence
from src.exporters.csv_table import write_csv
from src.exporters.shift_sequence import write_shift_sequence
from src.filtering.execution import apply_fir, apply_successive
from src.filtering.metrics import relative_error
from src.graph.topology import Topology
from ._inputs import fir_shift_matrix, input_signal

SHIFTS_SUBDIR = 'shifts'


def design_stage(config: ExperimentConfig, sequence: ShiftSequence, local_logger: logging.Logger) -> dict:
    """
    Persists a designed sequence and its report tables.

    Returns:
        dict: final objective, per-round errors, sweep count and the output paths.
    """
    shifts_dir = write_shift_sequence(os.path.join(config.out_dir, SHIFTS_SUBDIR), sequence)
    rounds_path = write_csv(os.path.join(config.out_dir, 'design_rounds.csv'),
                            ['round', 'weight', 'frobenius_error'],
                            [(index, weight, error) for index, (weight, error)
                             in enumerate(zip(sequence.weights, sequence.per_round_error), start=1)])
    history_path = write_csv(os.path.join(config.out_dir, 'design_history.csv'),
                             ['sweep', 'weighted_objective', 'unweighted_objective'],
                             [(sweep, weighted, unweighted) for sweep, (weighted, unweighted)
                              in enumerate(zip(sequence.objective_history, sequence.unweighted_history), start=1)])
    local_logger.info(f"Design written to {shifts_dir}")
    return {
        'final_objective': sequence.objective_history[-1],
        'per_round_error': [float(e) for e in sequence.per_round_error],
        'sweeps': sequence.sweeps,
        'converged': sequence.converged,
        'outputs': [shifts_dir, rounds_path, history_path],
    }


def run_stage(config: ExperimentConfig, topology: Topology, T: np.ndarray, sequence: ShiftSequence,
              local_logger: logging.Logger) -> dict:
    """Executes the designed shifts on the input signal and compares against T x (and FIR when configured)."""
    x = input_signal(config, topology.n_nodes)
    trace = apply_successive(sequence.shifts, x, T=T)
    target_norm = np.linalg.norm(T @ x)
    rows = [('successive', index, error, error / target_norm if target_norm > 0 else float('nan'))
            for index, error in enumerate(trace.errors)]
    summary = {'final_relative_error': relative_error(T, x, trace.final)}

    if config.fir_coeffs:
        S = fir_shift_matrix(topology, config.fir_shift)
        output = apply_fir(S, config.fir_coeffs, x)
        fir_error = float(np.linalg.norm(T @ x - output))
        rows.append(('fir', len(config.fir_coeffs) - 1, fir_error,
                     fir_error / target_norm if target_norm > 0 else float('nan')))
        summary['fir_relative_error'] = relative_error(T, x, output)
        local_logger.info(f"FIR baseline ({config.fir_shift}, {len(config.fir_coeffs)} taps): "
                          f"relative error {summary['fir_relative_error']:.6e}")

    path = write_csv(os.path.join(config.out_dir, 'run.csv'), ['method', 'round', 'error', 'relative_error'], rows)
    local_logger.info(f"Successive run: final relative error {summary['final_relative_error']:.6e}")
    summary['outputs'] = [path]
    return summary
