# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Core Experiment Runner Module
License: MIT License

This module defines the ExperimentRunner class, which carries one CLI task
through its stages (inputs, shift design or loading, task-specific stage)
and keeps track of status, progress and errors, delegating the work to the
specialized stage modules.
"""

import logging
import os
import uuid
from datetime import datetime
from typing import Optional

from src.cli.config_loader import ExperimentConfig
from src.config import Config
from src.errors import SuccessiveShiftsError
from src.session.logger_setup import close_session_logger, null_session_logger, setup_session_logger
from ._design_stage import design_stage, run_stage
from ._estimation_stage import estimate_stage, sparsify_stage
from ._fluctuation_stage import bound_stage, fluctuate_stage
from ._inputs import build_target, load_topology, obtain_shifts

logger = logging.getLogger(__name__)


def new_run_id(task: str) -> str:
    """Unique run identifier used for the run's log directory."""
    return f"{task}_{datetime.now().strftime('%Y%m%d_%H%M%S')}_{uuid.uuid4().hex[:8]}"


class ExperimentRunner:
    """
    Manages the lifecycle of one experiment run. The status moves through
    initializing -> preparing -> designing -> running -> completed, or to
    error with `error_message` set.
    """
    def __init__(self, config: ExperimentConfig, run_id: Optional[str] = None, send_log: bool = True):
        """
        Initializes a new run.

        Args:
            config (ExperimentConfig): The experiment configuration.
            run_id (str): Run identifier; generated when None.
            send_log (bool): Write a dedicated run log under Config.SESSION_LOGS_DIR.
        """
        self.config = config
        self.run_id = run_id or config.run_id or new_run_id(config.task)
        self.processing_status = "initializing"
        self.error_message = None
        self.progress = 0
        self.result = None
        if send_log:
            self.logger = setup_session_logger(self.run_id, Config.SESSION_LOGS_DIR, Config.SESSION_LOG_LEVEL)
        else:
            self.logger = null_session_logger(self.run_id)

    def _advance(self, status: str, progress: int):
        self.processing_status = status
        self.progress = progress
        self.logger.debug(f"Run {self.run_id}: {status} ({progress}%)")

    def status(self) -> dict:
        """Current status and progress, plus the error message once the run failed."""
        report = {'run_id': self.run_id, 'status': self.processing_status, 'progress': self.progress}
        if self.error_message:
            report['error'] = self.error_message
        return report

    def run(self) -> dict:
        """
        Executes the configured task.

        Returns:
            dict: Task summary (always including the written `outputs`).

        Raises:
            SuccessiveShiftsError: Any input or numerical failure, after the
                                   status has been set to "error".
        """
        config = self.config
        try:
            self._advance("preparing", 10)
            self.logger.info(f"Starting task '{config.task}' with seed {config.seed}, output {config.out_dir}")
            os.makedirs(config.out_dir, exist_ok=True)
            topology = load_topology(config, self.logger)
            T = build_target(config.target, topology.n_nodes, config.seed)

            self._advance("designing", 30)
            sequence = obtain_shifts(config, topology, T, self.logger)

            self._advance("running", 50)
            if config.task == 'design':
                self.result = design_stage(config, sequence, self.logger)
            elif config.task == 'run':
                self.result = run_stage(config, topology, T, sequence, self.logger)
            elif config.task == 'fluctuate':
                self.result = fluctuate_stage(config, sequence, self.logger)
            elif config.task == 'bound':
                self.result = bound_stage(config, sequence, self.logger)
            elif config.task == 'estimate':
                self.result = estimate_stage(config, T, sequence, self.logger)
            else:
                self.result = sparsify_stage(config, T, sequence, self.logger)

            self._advance("completed", 100)
            self.logger.info(f"Task '{config.task}' completed: {', '.join(self.result['outputs'])}")
            return self.result
        except SuccessiveShiftsError as e:
            self.processing_status = "error"
            self.error_message = str(e)
            self.logger.error(f"Task '{config.task}' failed: {e}")
            raise
        except Exception as e:
            self.processing_status = "error"
            self.error_message = f"Unexpected failure: {e}"
            self.logger.error(f"Task '{config.task}' failed unexpectedly:", exc_info=True)
            raise
        finally:
            close_session_logger(self.logger)
