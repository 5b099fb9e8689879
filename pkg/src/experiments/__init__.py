# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Experiments Package
License: MIT License

This package runs one CLI task end to end. The ExperimentRunner orchestrates
the stages implemented in the private modules of this package.
"""

from .core_runner import ExperimentRunner, new_run_id

__all__ = ['ExperimentRunner', 'new_run_id']
