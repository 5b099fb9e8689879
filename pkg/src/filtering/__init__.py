# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Filtering Package
License: MIT License

Simulated execution of designed operators on graph signals: successive
shifting, the FIR baseline, input signal models and error metrics. One
process computes every node's update per round; message passing is modeled,
not networked.
"""

from .trace import RunTrace
from .execution import apply_successive, apply_fir
from .metrics import relative_error
from .signals import SIGNAL_MODELS, sample_signals

__all__ = ['RunTrace', 'apply_successive', 'apply_fir', 'relative_error', 'SIGNAL_MODELS', 'sample_signals']
