# -*- coding: utf-8 -*-
"""
SuccessiveShifts - CLI Commands Module
License: MIT License

One function per task. Each runs the task through an ExperimentRunner and
returns its summary; errors propagate to the caller.
"""

import logging

from src.experiments.core_runner import ExperimentRunner
from .config_loader import ExperimentConfig, with_overrides

logger = logging.getLogger(__name__)


def _run(config: ExperimentConfig, task: str, send_log: bool) -> dict:
    if config.task != task:
        config = with_overrides(config, task=task)
    runner = ExperimentRunner(config, send_log=send_log)
    logger.info(f"Run {runner.run_id}: task '{task}'")
    try:
        return runner.run()
    finally:
        status = runner.status()
        logger.debug(f"Status for run {status['run_id']}: {status['status']} ({status['progress']}%)")


def cmd_design(config: ExperimentConfig, send_log: bool = True) -> dict:
    """Designs the shift sequence; writes the shift directory and the design tables."""
    return _run(config, 'design', send_log)


def cmd_run(config: ExperimentConfig, send_log: bool = True) -> dict:
    """Runs the shifts on the input signal (and the FIR baseline when configured)."""
    return _run(config, 'run', send_log)


def cmd_fluctuate(config: ExperimentConfig, send_log: bool = True) -> dict:
    """Empirical MSE, bound, rho and per-round deviation norms, one row per P_ac source."""
    return _run(config, 'fluctuate', send_log)


def cmd_bound(config: ExperimentConfig, send_log: bool = True) -> dict:
    """All bound variants from a single Monte-Carlo pass."""
    return _run(config, 'bound', send_log)


def cmd_estimate(config: ExperimentConfig, send_log: bool = True) -> dict:
    """Clean vs. zero imputation vs. estimator imputation over `seeds` repetitions."""
    return _run(config, 'estimate', send_log)


def cmd_sparsify(config: ExperimentConfig, send_log: bool = True) -> dict:
    """Deliberate link dropping with imputation and message accounting."""
    return _run(config, 'sparsify', send_log)


COMMANDS = {
    'design': cmd_design,
    'run': cmd_run,
    'fluctuate': cmd_fluctuate,
    'bound': cmd_bound,
    'estimate': cmd_estimate,
    'sparsify': cmd_sparsify,
}
