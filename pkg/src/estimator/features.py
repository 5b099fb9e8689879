# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Feature Vector Module
License: MIT License
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from src.errors import FeatureHistoryError, InputError


@dataclass(frozen=True)
class FeatureVector:
    """
    Input of the estimator node `owner` uses for neighbor `missing` in round
    `round_index`: [missing neighbor's value, own value, remaining neighbors in
    ascending index], all taken from the owner's view two rounds back.
    """
    owner: int
    missing: int
    round_index: int
    u: np.ndarray

    def __len__(self) -> int:
        return self.u.shape[0]


def feature_order(owner: int, missing: int, neighbors: Sequence[int]) -> list:
    """Node indices in feature order: missing neighbor, owner, then the rest ascending."""
    others = sorted(int(k) for k in neighbors if k != missing and k != owner)
    return [int(missing), int(owner)] + others


def build_feature_vector(owner: int, missing: int, neighbors: Sequence[int], view: np.ndarray,
                         round_index: int, pretrained: bool = False) -> FeatureVector:
    """
    Assembles u for node `owner` estimating neighbor `missing` in round l.

    `view` is the owner's knowledge of x^(l-2): its own value plus, per
    neighbor, the value it received in round l-1 or, if that message was
    lost, the estimate it used instead. Neighbors never heard from are 0.

    Args:
        owner (int): Node i (0-based).
        missing (int): Neighbor j (0-based), a member of `neighbors`.
        neighbors (Sequence[int]): In-neighbors of i, self excluded.
        view (np.ndarray): Length-N view vector.
        round_index (int): Round l (1-based).
        pretrained (bool): Whether offline pretraining defined round-1 features.

    Returns:
        FeatureVector: u of length |N_i| + 1.

    Raises:
        FeatureHistoryError: l < 2 without pretraining.
    """
    if missing not in neighbors:
        raise InputError(f"Node {missing} is not an in-neighbor of node {owner}")
    if round_index < 2 and not pretrained:
        raise FeatureHistoryError(f"Round {round_index}: node {owner} has fewer than two past iterations "
                                  f"and no pretrained estimator for neighbor {missing}")
    view = np.asarray(view, dtype=float)
    return FeatureVector(owner=int(owner), missing=int(missing), round_index=int(round_index),
                         u=view[feature_order(owner, missing, neighbors)].copy())
