# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Estimator Package
License: MIT License

Random-Fourier-feature estimators that impute lost neighbor values, their
offline pretraining, and the sparsified protocol.
"""

from .bank import EstimatorBank
from .features import FeatureVector, build_feature_vector, feature_order
from .kernels import KERNELS, Kernel, kernel_exact, median_heuristic, sample_spectral
from .neighbor import NeighborEstimator, default_step_size, ogd_step, predict
from .pretrain import collect_training_samples, offline_pretrain
from .rff import (ExactKernelRidge, RffModel, fit_exact_kernel_ridge, fit_rff_ridge, rff_feature_matrix, rff_features,
                  ridge_closed_form)
from .simulation import run_imputing_protocol, simulate_with_estimation, sparsify_run
