# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Run Logger Setup Module
License: MIT License

Dedicated loggers for individual experiment runs, kept apart from the global
log and from the run's output directory.
"""

import os
import logging
from logging.handlers import RotatingFileHandler


def setup_session_logger(session_id: str, base_log_dir: str, log_level: str) -> logging.Logger:
    """
    Creates (or returns the existing) logger of one run.

    Args:
        session_id (str): The unique identifier of the run.
        base_log_dir (str): Directory under which `<session_id>/<session_id>.log` is written.
        log_level (str): Logging level name (e.g., 'DEBUG', 'INFO').

    Returns:
        logging.Logger: The configured logger `session.<session_id>`.
    """
    session_logger = logging.getLogger(f"session.{session_id}")
    session_logger.propagate = False
    if session_logger.handlers:
        return session_logger

    session_log_dir = os.path.join(base_log_dir, session_id)
    os.makedirs(session_log_dir, exist_ok=True)
    handler = RotatingFileHandler(
        os.path.join(session_log_dir, f"{session_id}.log"),
        maxBytes=2 * 1024 * 1024,  # 2 MB per file
        backupCount=1
    )
    handler.setFormatter(logging.Formatter('%(asctime)s - %(levelname)s - %(message)s'))
    handler.setLevel(getattr(logging, log_level))

    session_logger.addHandler(handler)
    session_logger.setLevel(getattr(logging, log_level))
    session_logger.info(f"Run logger initialized for run ID: {session_id}")
    return session_logger


def null_session_logger(session_id: str) -> logging.Logger:
    """A logger for runs that must not create log files."""
    session_logger = logging.getLogger(f"session.{session_id}.null")
    if not session_logger.handlers:
        session_logger.addHandler(logging.NullHandler())
    session_logger.propagate = False
    return session_logger


def close_session_logger(session_logger: logging.Logger):
    """Flushes and detaches the handlers of a run logger."""
    for handler in list(session_logger.handlers):
        handler.close()
        session_logger.removeHandler(handler)
