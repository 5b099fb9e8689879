# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Fluctuation Package
License: MIT License

Random edge fluctuations: the link-drop model, closed-form and Monte-Carlo
deviation moments, the empirical MSE and its upper bound.
"""

from .analysis import (BOUND_VARIANTS, MEAN_TERMS, FluctuationReport, bound_coefficients, bound_from_statistics,
                       deviation_moments_mc, evaluate_fluctuation, mse_bound, mse_empirical, run_fluctuating)
from .model import FluctuationModel, activation_matrix, max_spectral_norm, resolve_rho
from .moments import DeviationMoments, chi_matrix, cross_correlation, z1_moments, z2_mean
from .monte_carlo import DeviationStatistics, chunk_sizes, run_monte_carlo, simulate_batch
from .perturbation import drop_probabilities, mean_perturbation, sample_activation, sample_perturbed_shift
from .spectral import spectral_norm
