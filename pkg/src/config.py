# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Configuration Module
License: MIT License

This module defines the process-wide default settings. Experiment-specific
values come from the INI file handled by `src.cli.config_loader`; anything the
INI file leaves out falls back to the values below.
"""

import os


def _env_bool(name: str, default: str) -> bool:
    return os.environ.get(name, default).lower() == 'true'


class Config:
    """
    Default configuration for the library and the experiment runner.
    Settings can be overridden by environment variables for flexible deployment.
    """
    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'INFO').upper()
    LOG_DIR = os.environ.get('LOG_DIR', 'logs')
    GLOBAL_LOG_FILE = os.environ.get('GLOBAL_LOG_FILE', 'successive_shifts.log')
    SESSION_LOGS_DIR = os.path.join(LOG_DIR, 'sessions')
    SESSION_LOG_LEVEL = os.environ.get('SESSION_LOG_LEVEL', 'DEBUG').upper()  # Detailed logging for individual runs

    SHOW_PROGRESS = _env_bool('SHOW_PROGRESS', 'True')

    # Monte-Carlo execution
    MC_CHUNK_SIZE = int(os.environ.get('MC_CHUNK_SIZE', 2048))  # trials per chunk, fixes the RNG streams
    DEFAULT_WORKERS = int(os.environ.get('DEFAULT_WORKERS', 1))
    DEFAULT_TRIALS = int(os.environ.get('DEFAULT_TRIALS', 10000))

    # Shift design (BCD)
    DESIGN_EPSILON = float(os.environ.get('DESIGN_EPSILON', 1e-6))
    DESIGN_MAX_SWEEPS = int(os.environ.get('DESIGN_MAX_SWEEPS', 200))
    DESIGN_WEIGHT_SCHEME = os.environ.get('DESIGN_WEIGHT_SCHEME', 'geometric')
    DESIGN_WEIGHT_RATIO = float(os.environ.get('DESIGN_WEIGHT_RATIO', 2.0))
    RIDGE_RETRY_FACTOR = 1e-10  # ridge = factor * trace(Gram) / E on singular blocks

    # Spectral norm power iteration
    POWER_ITERATION_TOL = 1e-10
    POWER_ITERATION_MAX_ITER = 10000

    # Missing-value estimator
    ESTIMATOR_FEATURES = int(os.environ.get('ESTIMATOR_FEATURES', 100))  # D
    ESTIMATOR_LAMBDA = float(os.environ.get('ESTIMATOR_LAMBDA', 1e-4))
    ESTIMATOR_KERNEL = os.environ.get('ESTIMATOR_KERNEL', 'gaussian')
    PRETRAIN_SAMPLES = int(os.environ.get('PRETRAIN_SAMPLES', 500))  # K

    # Input signals: 'white' (i.i.d. standard normal) or 'field' (common level plus sensor noise)
    SIGNAL_MODEL = os.environ.get('SIGNAL_MODEL', 'white')
    SIGNAL_NOISE = float(os.environ.get('SIGNAL_NOISE', 0.05))

    # Output formatting
    FLOAT_FORMAT = '%.17g'
