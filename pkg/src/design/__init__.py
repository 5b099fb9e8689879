# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Shift Design Package
License: MIT License

This package designs a sequence of support-constrained shift matrices whose
product approximates a target transformation T, by block coordinate descent
over the weighted per-round cost.
"""

from .config import DesignConfig, default_weights
from .objective import objective, unweighted_objective, per_round_errors, product_range, prefix_products
from .block_solver import solve_block, block_normal_system
from .bcd import ShiftSequence, bcd_design, initialize_shifts

__all__ = [
    'DesignConfig', 'default_weights',
    'objective', 'unweighted_objective', 'per_round_errors', 'product_range', 'prefix_products',
    'solve_block', 'block_normal_system',
    'ShiftSequence', 'bcd_design', 'initialize_shifts',
]
