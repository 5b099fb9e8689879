# -*- coding: utf-8 -*-
"""Tests for kernels, random Fourier features, online estimators and imputing runs."""

import numpy as np
import pytest

from src.design.bcd import bcd_design
from src.design.config import DesignConfig
from src.errors import DimensionError, EstimatorDivergenceError, FeatureHistoryError, InputError, NumericalError
from src.estimator import (
    EstimatorBank,
    Kernel,
    NeighborEstimator,
    RffModel,
    build_feature_vector,
    collect_training_samples,
    feature_order,
    fit_exact_kernel_ridge,
    fit_rff_ridge,
    kernel_exact,
    median_heuristic,
    offline_pretrain,
    ogd_step,
    predict,
    rff_features,
    ridge_closed_form,
    sample_spectral,
    simulate_with_estimation,
    sparsify_run,
)
from src.filtering.execution import apply_successive
from src.filtering.metrics import relative_error
from src.filtering.signals import sample_signals
from src.fluctuation.analysis import run_fluctuating
from src.graph.generators import random_er_graph
from src.utils import substream


@pytest.fixture
def estimator():
    model = RffModel.create(3, 40, Kernel('gaussian', 1.0), seed=2)
    return NeighborEstimator(owner=0, neighbor=1, model=model, lam=0.0)


@pytest.fixture
def consensus_setup(consensus_sequence):
    return consensus_sequence.topology, consensus_sequence.shifts


# Kernels and random features

@pytest.mark.parametrize('name', ['gaussian', 'laplacian', 'cauchy'])
def test_kernels_are_one_at_zero_and_symmetric(name, rng):
    kernel = Kernel(name, 1.3)
    u, v = rng.standard_normal(4), rng.standard_normal(4)
    assert kernel_exact(u, u, kernel) == pytest.approx(1.0)
    assert kernel_exact(u, v, kernel) == pytest.approx(kernel_exact(v, u, kernel))


def test_gaussian_kernel_value():
    sigma = 0.7
    u = np.zeros(2)
    v = np.array([sigma * np.sqrt(2.0), 0.0])
    assert kernel_exact(u, v, Kernel('gaussian', sigma)) == pytest.approx(np.exp(-1.0))


def test_kernel_validation():
    with pytest.raises(InputError):
        Kernel('polynomial')
    with pytest.raises(InputError):
        Kernel('gaussian', 0.0)


def test_features_of_zero_input():
    W = np.random.default_rng(0).standard_normal((3, 5))
    features = rff_features(np.zeros(3), W)
    np.testing.assert_allclose(features, np.concatenate([np.zeros(5), np.ones(5)]) / np.sqrt(5))


def test_features_have_unit_norm(rng):
    W = rng.standard_normal((4, 30))
    for _ in range(5):
        assert np.linalg.norm(rff_features(rng.standard_normal(4), W)) == pytest.approx(1.0)
    with pytest.raises(DimensionError):
        rff_features(np.zeros(3), W)


def test_random_features_approximate_gaussian_kernel():
    u, v = np.array([0.3, -0.2, 0.5]), np.array([-0.4, 0.1, 0.9])
    model = RffModel.create(3, 10 ** 4, Kernel('gaussian', 1.0), seed=5)
    assert abs(model.approximate_kernel(u, v) - kernel_exact(u, v, Kernel('gaussian', 1.0))) < 0.05


def test_spectral_samples_are_deterministic_and_checked():
    kernel = Kernel('laplacian', 2.0)
    np.testing.assert_array_equal(sample_spectral(10, kernel, 3, seed=4), sample_spectral(10, kernel, 3, seed=4))
    assert sample_spectral(10, kernel, 3, seed=4).shape == (3, 10)
    with pytest.raises(InputError):
        sample_spectral(0, kernel, 3)


def test_gaussian_spectral_covariance():
    sigma = 2.0
    W = sample_spectral(10 ** 5, Kernel('gaussian', sigma), 2, seed=1)
    np.testing.assert_allclose(np.cov(W), np.eye(2) / sigma ** 2, atol=0.005)


def test_median_heuristic():
    samples = np.array([[0.0, 0.0], [3.0, 4.0], [6.0, 8.0]])
    assert median_heuristic(samples) == pytest.approx(5.0)
    assert median_heuristic(samples, 'laplacian') == pytest.approx(7.0)
    assert median_heuristic(np.ones((4, 2))) == 1.0


@pytest.mark.slow
@pytest.mark.parametrize('name', ['gaussian', 'laplacian', 'cauchy'])
def test_random_features_are_unbiased_with_inverse_d_variance(name):
    kernel = Kernel(name, 1.0)
    u, v = np.array([0.2, -0.1]), np.array([-0.3, 0.4])
    exact = kernel_exact(u, v, kernel)
    estimates = {}
    for D in (50, 100):
        estimates[D] = np.array([RffModel.create(2, D, kernel, seed=seed).approximate_kernel(u, v)
                                 for seed in range(10 ** 4)])
        standard_error = estimates[D].std(ddof=1) / np.sqrt(estimates[D].size)
        assert abs(estimates[D].mean() - exact) < 4 * standard_error
    ratio = estimates[100].var(ddof=1) / estimates[50].var(ddof=1)
    assert 0.4 <= ratio <= 0.6


# Ridge fits

def test_ridge_closed_form_examples():
    y = np.array([1.0, -2.0, 3.0, 0.5])
    np.testing.assert_allclose(ridge_closed_form(np.eye(4), 0.0, 4, y), y)
    np.testing.assert_allclose(ridge_closed_form(np.eye(4), 0.25, 4, y), y / 2)


def test_ridge_closed_form_matches_inverse():
    rng = np.random.default_rng(20)
    A = rng.standard_normal((20, 20))
    gram = A @ A.T
    y = rng.standard_normal(20)
    alpha = ridge_closed_form(gram, 0.01, 20, y)
    system = gram + 0.2 * np.eye(20)
    np.testing.assert_allclose(alpha, np.linalg.inv(system) @ y, rtol=1e-10, atol=1e-10)
    assert np.linalg.norm(system @ alpha - y) <= 1e-10 * np.linalg.norm(y)


def test_ridge_closed_form_rejects_singular_system():
    with pytest.raises(NumericalError):
        ridge_closed_form(np.zeros((3, 3)), 0.0, 3, np.ones(3))
    with pytest.raises(InputError):
        ridge_closed_form(np.eye(3), -1.0, 3, np.ones(3))


def test_unregularized_fit_interpolates_constant_targets(rng):
    model = RffModel.create(3, 50, Kernel('gaussian', 1.0), seed=3)
    U = rng.standard_normal((10, 3))
    beta = fit_rff_ridge(model.feature_matrix(U), np.full(10, 2.5), 0.0)
    np.testing.assert_allclose(model.feature_matrix(U) @ beta, np.full(10, 2.5), atol=1e-8)


def test_primal_and_dual_fits_agree(rng):
    model = RffModel.create(2, 5, Kernel('gaussian', 1.0), seed=4)
    U = rng.standard_normal((40, 2))
    y = U @ np.array([1.0, -0.5])
    features = model.feature_matrix(U)
    beta = fit_rff_ridge(features, y, 0.01)
    dual = features.T @ ridge_closed_form(features @ features.T, 0.01, 40, y)
    np.testing.assert_allclose(beta, dual, rtol=1e-7, atol=1e-9)


def test_rff_fit_beats_zero_predictor_on_linear_target():
    rng = np.random.default_rng(9)
    direction = np.array([0.5, -1.0, 0.25])
    U_train, U_test = rng.standard_normal((500, 3)), rng.standard_normal((200, 3))
    kernel = Kernel('gaussian', median_heuristic(U_train))
    model = RffModel.create(3, 200, kernel, seed=9)
    beta = fit_rff_ridge(model.feature_matrix(U_train), U_train @ direction, 1e-4)

    rmse = np.sqrt(np.mean((model.feature_matrix(U_test) @ beta - U_test @ direction) ** 2))
    assert rmse < np.sqrt(np.mean((U_test @ direction) ** 2))


def test_exact_kernel_ridge_interpolates(rng):
    samples = rng.standard_normal((8, 2))
    y = rng.standard_normal(8)
    fitted = fit_exact_kernel_ridge(samples, y, Kernel('gaussian', 1.0), lam=0.0)
    np.testing.assert_allclose(fitted.predict(samples), y, atol=1e-8)


def test_rff_ridge_approaches_exact_kernel_ridge():
    rng = np.random.default_rng(28)
    direction = np.array([0.5, -0.3, 0.2])
    U_train, U_test = rng.standard_normal((200, 3)), rng.standard_normal((100, 3))
    y = np.sin(U_train @ direction)
    kernel, lam = Kernel('gaussian', 2.0), 1e-2

    exact = fit_exact_kernel_ridge(U_train, y, kernel, lam)
    model = RffModel.create(3, 20000, kernel, seed=28)
    beta = fit_rff_ridge(model.feature_matrix(U_train), y, lam)

    difference = model.feature_matrix(U_test) @ beta - exact.predict(U_test)
    assert np.sqrt(np.mean(difference ** 2)) < 0.05


# Online estimators

def test_predict_examples(estimator, rng):
    u = rng.standard_normal(3)
    assert predict(estimator, u) == 0.0
    estimator.beta = estimator.model.features(u)
    assert predict(estimator, u) == pytest.approx(1.0)
    assert abs(predict(estimator, rng.standard_normal(3))) <= np.linalg.norm(estimator.beta) + 1e-12


def test_zero_residual_leaves_beta_unchanged(estimator, rng):
    u = rng.standard_normal(3)
    estimator.beta = rng.standard_normal(80)
    before = estimator.beta.copy()
    ogd_step(estimator, u, estimator.predict(u), eta=0.05)
    np.testing.assert_allclose(estimator.beta, before, atol=1e-15)


def test_repeated_sample_error_contracts_geometrically(estimator, rng):
    u, target, eta = rng.standard_normal(3), 1.7, 0.05
    errors = []
    for _ in range(6):
        errors.append(estimator.predict(u) - target)
        estimator.ogd_step(u, target, eta=eta)
    ratios = np.array(errors[1:]) / np.array(errors[:-1])
    np.testing.assert_allclose(ratios, 1.0 - 2.0 * eta, rtol=1e-9)
    assert estimator.updates == 6


def test_gradient_matches_finite_differences(rng):
    model = RffModel.create(3, 10, Kernel('cauchy', 1.0), seed=6)
    for _ in range(10):
        estimator = NeighborEstimator(owner=0, neighbor=1, model=model, beta=rng.standard_normal(20), lam=0.3)
        u, target = rng.standard_normal(3), float(rng.standard_normal())
        analytic = estimator.gradient(u, target)
        numeric = np.empty(20)
        step = 1e-6
        for index in range(20):
            shifted = estimator.copy()
            shifted.beta[index] += step
            upper = shifted.cost(u, target)
            shifted.beta[index] -= 2 * step
            numeric[index] = (upper - shifted.cost(u, target)) / (2 * step)
        np.testing.assert_allclose(analytic, numeric, rtol=1e-6, atol=1e-8)


def test_gradient_with_pretrained_rows_matches_finite_differences(rng):
    model = RffModel.create(2, 8, Kernel('gaussian', 1.0), seed=7)
    estimator = NeighborEstimator(owner=0, neighbor=1, model=model, beta=rng.standard_normal(16), lam=0.2,
                                  schedule=rng.standard_normal((3, 16)))
    u, target = rng.standard_normal(2), 0.4
    analytic = estimator.gradient(u, target, round_index=2)
    numeric = np.empty(16)
    step = 1e-5
    for index in range(16):
        shifted = estimator.copy()
        shifted.beta[index] += step
        upper = shifted.cost(u, target, round_index=2)
        shifted.beta[index] -= 2 * step
        numeric[index] = (upper - shifted.cost(u, target, round_index=2)) / (2 * step)
    np.testing.assert_allclose(analytic, numeric, rtol=1e-6, atol=1e-8)


def test_pretrained_rows_are_selected_by_round(rng):
    model = RffModel.create(2, 4, Kernel(), seed=0)
    schedule = rng.standard_normal((3, 8))
    estimator = NeighborEstimator(owner=0, neighbor=1, model=model, schedule=schedule)
    assert estimator.rounds == 3
    np.testing.assert_array_equal(estimator.coefficients(1), schedule[0])
    np.testing.assert_array_equal(estimator.coefficients(3), schedule[2])
    np.testing.assert_array_equal(estimator.coefficients(9), schedule[2])

    u = rng.standard_normal(2)
    assert estimator.predict(u, round_index=2) == pytest.approx(schedule[1] @ model.features(u))
    estimator.ogd_step(u, 1.0, eta=0.1, round_index=2)
    np.testing.assert_array_equal(estimator.schedule, schedule)
    np.testing.assert_allclose(estimator.coefficients(1) - schedule[0], estimator.beta)

    with pytest.raises(DimensionError):
        NeighborEstimator(owner=0, neighbor=1, model=model, schedule=np.zeros((2, 5)))


def test_step_size_schedule(estimator):
    assert estimator.eta == pytest.approx(0.1 / np.sqrt(40))
    estimator.eta_decay = True
    assert estimator.step_size(4) == pytest.approx(estimator.eta / 2)


def test_frozen_estimator_ignores_updates(estimator, rng):
    estimator.frozen = True
    estimator.ogd_step(rng.standard_normal(3), 5.0)
    assert estimator.updates == 0
    assert not np.any(estimator.beta)


def test_non_finite_update_is_reported(estimator):
    with pytest.raises(EstimatorDivergenceError):
        estimator.ogd_step(np.zeros(3), np.inf, eta=0.1)


def test_beta_length_is_checked():
    model = RffModel.create(2, 4, Kernel(), seed=0)
    with pytest.raises(DimensionError):
        NeighborEstimator(owner=0, neighbor=1, model=model, beta=np.zeros(5))


# Feature vectors

def test_feature_order_puts_missing_then_owner():
    assert feature_order(2, 4, [0, 4, 1]) == [4, 2, 0, 1]


def test_feature_vector_from_view():
    view = np.array([10.0, 11.0, 12.0, 13.0])
    vector = build_feature_vector(1, 3, [0, 3], view, round_index=2)
    np.testing.assert_array_equal(vector.u, [13.0, 11.0, 10.0])

    single = build_feature_vector(1, 0, [0], view, round_index=3)
    assert len(single) == 2


def test_feature_vector_needs_history_or_pretraining():
    view = np.zeros(3)
    with pytest.raises(FeatureHistoryError):
        build_feature_vector(0, 1, [1, 2], view, round_index=1)
    assert len(build_feature_vector(0, 1, [1, 2], view, round_index=1, pretrained=True)) == 3
    with pytest.raises(InputError):
        build_feature_vector(0, 0, [1, 2], view, round_index=2)


# Banks and pretraining

def test_bank_has_one_estimator_per_cross_edge(cycle3):
    bank = EstimatorBank.create(cycle3, features=8, seed=1)
    assert list(bank.pairs()) == [(0, 2), (1, 0), (2, 1)]
    assert bank.estimator(1, 0).model.dim == 2
    with pytest.raises(InputError):
        bank.estimator(0, 1)


def test_bank_copy_is_independent(cycle3):
    bank = EstimatorBank.create(cycle3, features=8, seed=1)
    clone = bank.copy()
    clone.estimator(1, 0).beta[:] = 1.0
    assert not np.any(bank.estimator(1, 0).beta)


def test_training_samples_follow_clean_trajectories(cycle3):
    shifts = [np.array([[1.0, 0.0, 0.5], [0.5, 1.0, 0.0], [0.0, 0.5, 1.0]])] * 2
    signals = np.array([[1.0, 2.0, 3.0]])
    samples = collect_training_samples(cycle3, shifts, signals)
    U, y, rounds = samples[(1, 0)]

    np.testing.assert_array_equal(U, [[0.0, 2.0], [1.0, 2.0]])
    first = shifts[0] @ signals[0]
    np.testing.assert_allclose(y, [1.0, first[0]])
    np.testing.assert_array_equal(rounds, [1, 2])
    second_U, second_y = samples[(1, 0)].round(2)
    np.testing.assert_array_equal(second_U, [[1.0, 2.0]])
    np.testing.assert_allclose(second_y, [first[0]])


def test_pretraining_is_deterministic(consensus_setup):
    topology, shifts = consensus_setup
    first = offline_pretrain(topology, shifts, K_samples=30, seed=3, features=20)
    second = offline_pretrain(topology, shifts, K_samples=30, seed=3, features=20)
    assert first.pretrained and first.pretrain_samples == 30
    for pair in first.pairs():
        assert first.estimators[pair].rounds == len(shifts)
        assert not np.any(first.estimators[pair].beta)
        np.testing.assert_array_equal(first.estimators[pair].schedule, second.estimators[pair].schedule)


def test_single_sample_pretraining_fits_every_round_exactly(consensus_setup):
    topology, shifts = consensus_setup
    bank = offline_pretrain(topology, shifts, kernel=Kernel('gaussian', 1.0), K_samples=1, seed=2,
                            features=200, lam=0.0, signal_model='white')
    signals = sample_signals(1, topology.n_nodes, substream(2, 'data'), 'white')
    for pair, samples in collect_training_samples(topology, shifts, signals).items():
        estimator = bank.estimators[pair]
        for round_index in range(1, len(shifts) + 1):
            U, y = samples.round(round_index)
            np.testing.assert_allclose(estimator.predict(U[0], round_index), y[0], atol=1e-6)


@pytest.mark.parametrize('signal_model', ['white', 'field'])
def test_pretrained_bank_beats_zero_predictor_on_held_out_signals(consensus_setup, signal_model):
    topology, shifts = consensus_setup
    bank = offline_pretrain(topology, shifts, K_samples=300, seed=4, features=100, signal_model=signal_model)
    assert bank.signal_model == signal_model
    held_out = sample_signals(100, topology.n_nodes, np.random.default_rng(99), signal_model)
    squared_error = squared_target = 0.0
    for pair, samples in collect_training_samples(topology, shifts, held_out).items():
        estimator = bank.estimators[pair]
        for U, y, round_index in zip(*samples):
            squared_error += (estimator.predict(U, round_index) - y) ** 2
            squared_target += y ** 2
    assert squared_error < squared_target


def test_pretraining_needs_samples(consensus_setup):
    topology, shifts = consensus_setup
    with pytest.raises(InputError):
        offline_pretrain(topology, shifts, K_samples=0)


# Imputing and sparsified runs

def test_full_activation_reproduces_clean_run_and_learns(consensus_setup, rng):
    topology, shifts = consensus_setup
    bank = EstimatorBank.create(topology, features=10, seed=0)
    x = rng.standard_normal(topology.n_nodes)
    trace = simulate_with_estimation(shifts, 1.0, x, bank, rng)

    np.testing.assert_allclose(trace.final, apply_successive(shifts, x).final, atol=1e-12)
    assert trace.imputed_count == 0
    assert all(estimator.updates == len(shifts) - 1 for estimator in bank.estimators.values())


def test_frozen_zero_bank_matches_zero_imputation(consensus_setup):
    topology, shifts = consensus_setup
    bank = EstimatorBank.create(topology, features=10, seed=0).freeze()
    x = np.random.default_rng(1).standard_normal(topology.n_nodes)
    imputed = simulate_with_estimation(shifts, 0.7, x, bank, np.random.default_rng(5))
    dropped = run_fluctuating(shifts, 0.7, x, np.random.default_rng(5), links=topology.cross_links())

    np.testing.assert_allclose(imputed.final, dropped.final, atol=1e-12)
    assert imputed.imputed_count == dropped.imputed_count


def test_imputing_and_dropping_runs_count_messages_alike(consensus_setup):
    topology, shifts = consensus_setup
    bank = EstimatorBank.create(topology, features=10, seed=0)
    x = np.random.default_rng(2).standard_normal(topology.n_nodes)
    imputed = simulate_with_estimation(shifts, 0.6, x, bank, np.random.default_rng(8))
    dropped = run_fluctuating(shifts, 0.6, x, np.random.default_rng(8), links=topology.cross_links())

    assert imputed.messages_full == dropped.messages_full == len(shifts) * topology.cross_edge_count
    assert imputed.messages_sent == dropped.messages_sent
    assert imputed.messages_sent + imputed.imputed_count == imputed.messages_full


def test_shifts_must_fit_bank_topology(cycle3):
    bank = EstimatorBank.create(cycle3, features=4)
    with pytest.raises(InputError):
        simulate_with_estimation([np.ones((3, 3))], 1.0, np.ones(3), bank, np.random.default_rng(0))


def test_sparsify_without_drops_is_clean(consensus_setup, rng):
    topology, shifts = consensus_setup
    bank = EstimatorBank.create(topology, features=10, seed=0)
    x = rng.standard_normal(topology.n_nodes)
    trace = sparsify_run(shifts, 0.0, x, bank, rng)

    np.testing.assert_allclose(trace.final, apply_successive(shifts, x).final, atol=1e-12)
    assert trace.message_savings == 0.0


def test_sparsify_freeze_stops_all_messages(consensus_setup, rng):
    topology, shifts = consensus_setup
    bank = EstimatorBank.create(topology, features=10, seed=0)
    trace = sparsify_run(shifts, 0.2, rng.standard_normal(topology.n_nodes), bank, rng, freeze_after=0)
    assert trace.messages_sent == 0
    assert trace.message_savings == 1.0


def test_sparsify_rejects_full_drop_rate(consensus_setup, rng):
    topology, shifts = consensus_setup
    bank = EstimatorBank.create(topology, features=10)
    with pytest.raises(InputError):
        sparsify_run(shifts, 1.0, np.ones(topology.n_nodes), bank, rng)


def test_sparsify_message_count_is_binomial(consensus_setup):
    topology, shifts = consensus_setup
    bank = EstimatorBank.create(topology, features=10, seed=0)
    rng = np.random.default_rng(17)
    sent = full = 0
    for _ in range(20):
        trace = sparsify_run(shifts, 0.3, rng.standard_normal(topology.n_nodes), bank.copy(), rng)
        sent += trace.messages_sent
        full += trace.messages_full
    standard_error = np.sqrt(full * 0.3 * 0.7)
    assert abs(sent - 0.7 * full) <= 4 * standard_error


@pytest.mark.slow
def test_pretrained_imputation_beats_zero_imputation():
    topology = random_er_graph(10, 0.4, seed=0)
    T = np.full((10, 10), 0.1)
    shifts = bcd_design(T, topology, DesignConfig(L=6, seed=0)).shifts
    pretrained = offline_pretrain(topology, shifts, K_samples=500, seed=0, features=100, signal_model='field')
    zero_bank = EstimatorBank.create(topology, features=100, seed=0).freeze()

    wins = 0
    for seed in range(50):
        x = sample_signals(1, 10, substream(seed, 'data', 1), 'field')[0]
        rff = simulate_with_estimation(shifts, 0.8, x, pretrained.copy(), substream(seed, 'fluctuation', 0))
        zero = simulate_with_estimation(shifts, 0.8, x, zero_bank.copy(), substream(seed, 'fluctuation', 0))
        wins += relative_error(T, x, rff.final) < relative_error(T, x, zero.final)
    assert wins >= 45
