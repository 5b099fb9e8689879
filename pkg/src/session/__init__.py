# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Run Logging Package
License: MIT License

This package sets up the dedicated loggers of individual experiment runs.
"""

from .logger_setup import close_session_logger, null_session_logger, setup_session_logger

__all__ = ['setup_session_logger', 'null_session_logger', 'close_session_logger']
