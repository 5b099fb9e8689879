# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Input Signals Module
License: MIT License

Random input signals for experiments and estimator pretraining:

    white   x ~ Normal(0, I)
    field   x = a 1 + s e,  a ~ Normal(0, 1), e ~ Normal(0, I)

The 'field' model describes sensors observing one common quantity through
independent noise of standard deviation s, so neighboring readings are
correlated before any exchange has taken place.
"""

import numpy as np

from src.config import Config
from src.errors import InputError

SIGNAL_MODELS = ('white', 'field')


def check_signal_model(model: str, noise: float = Config.SIGNAL_NOISE):
    if model not in SIGNAL_MODELS:
        raise InputError(f"Unknown signal model '{model}'. Use one of {', '.join(SIGNAL_MODELS)}")
    if not noise >= 0.0:
        raise InputError(f"Signal noise must be nonnegative, got {noise}")


def sample_signals(count: int, n_nodes: int, rng: np.random.Generator, model: str = Config.SIGNAL_MODEL,
                   noise: float = Config.SIGNAL_NOISE) -> np.ndarray:
    """
    Draws `count` signals as the rows of a (count, n_nodes) array.

    Args:
        count (int): Number of signals.
        n_nodes (int): Signal length N.
        rng (np.random.Generator): Source of randomness.
        model (str): 'white' or 'field'.
        noise (float): Sensor noise s of the 'field' model.

    Returns:
        np.ndarray: The signals.
    """
    check_signal_model(model, noise)
    if model == 'white':
        return rng.standard_normal((int(count), int(n_nodes)))
    level = rng.standard_normal((int(count), 1))
    return level + float(noise) * rng.standard_normal((int(count), int(n_nodes)))
