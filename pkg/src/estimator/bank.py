# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Estimator Bank Module
License: MIT License

Owns one RffModel per node (feature dimension |N_i| + 1) and one
NeighborEstimator per ordered (node, in-neighbor) pair.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, Mapping, Optional, Tuple, Union

from src.config import Config
from src.errors import InputError
from src.graph.topology import Topology
from .kernels import Kernel
from .neighbor import NeighborEstimator, default_step_size
from .rff import RffModel

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


@dataclass
class EstimatorBank:
    """
    All estimators of a network. After pretraining, `pretrain_samples` and
    `signal_model` describe the training signals.
    """
    topology: Topology
    models: Dict[int, RffModel]
    estimators: Dict[Pair, NeighborEstimator]
    kernel_name: str = 'gaussian'
    features: int = Config.ESTIMATOR_FEATURES
    lam: float = Config.ESTIMATOR_LAMBDA
    eta: Optional[float] = None
    eta_decay: bool = False
    seed: int = 0
    pretrained: bool = False
    pretrain_samples: int = 0
    signal_model: Optional[str] = None

    @classmethod
    def create(cls, topology: Topology, features: int = Config.ESTIMATOR_FEATURES,
               kernel: Union[str, Kernel] = Config.ESTIMATOR_KERNEL, lam: float = Config.ESTIMATOR_LAMBDA,
               eta: Optional[float] = None, eta_decay: bool = False, seed: int = 0,
               scales: Optional[Mapping[int, float]] = None) -> 'EstimatorBank':
        """
        Creates untrained estimators (beta = 0) for every cross-edge.

        Args:
            topology (Topology): The network.
            features (int): Number of spectral samples D.
            kernel: Kernel name or Kernel; a name means scale 1 unless `scales` is given.
            lam (float): Regularization lambda.
            eta (float): Constant step size; 0.1/sqrt(D) when None.
            eta_decay (bool): Use eta / sqrt(l) in round l.
            seed (int): Seed of the per-node frequency streams.
            scales (Mapping[int, float]): Per-node kernel scales.

        Returns:
            EstimatorBank: The bank.
        """
        base = Kernel(name=kernel) if isinstance(kernel, str) else kernel
        if int(features) < 1:
            raise InputError(f"The number of random features must be at least 1, got {features}")
        eta = default_step_size(int(features)) if eta is None else float(eta)
        models, estimators = {}, {}
        for node in range(topology.n_nodes):
            neighbors = topology.in_neighbors(node)
            if not neighbors:
                continue
            node_kernel = base.with_scale(scales[node]) if scales is not None else base
            models[node] = RffModel.create(len(neighbors) + 1, int(features), node_kernel, seed=seed, node=node)
            for neighbor in neighbors:
                estimators[(node, neighbor)] = NeighborEstimator(owner=node, neighbor=neighbor, model=models[node],
                                                                 eta=eta, lam=lam, eta_decay=eta_decay)
        logger.debug(f"Created {len(estimators)} neighbor estimators over {len(models)} nodes "
                     f"(D={features}, kernel={base.name})")
        return cls(topology=topology, models=models, estimators=estimators, kernel_name=base.name,
                   features=int(features), lam=float(lam), eta=eta, eta_decay=bool(eta_decay), seed=int(seed))

    def estimator(self, owner: int, neighbor: int) -> NeighborEstimator:
        try:
            return self.estimators[(owner, neighbor)]
        except KeyError:
            raise InputError(f"No estimator for node {owner} and neighbor {neighbor}: not an edge") from None

    def pairs(self) -> Iterator[Pair]:
        return iter(sorted(self.estimators))

    @property
    def scales(self) -> Dict[int, float]:
        return {node: model.kernel.scale for node, model in self.models.items()}

    def freeze(self) -> 'EstimatorBank':
        for estimator in self.estimators.values():
            estimator.frozen = True
        return self

    def copy(self) -> 'EstimatorBank':
        """Copy with independent coefficient vectors, so a run never alters the pretrained state."""
        return EstimatorBank(topology=self.topology, models=self.models,
                             estimators={pair: estimator.copy() for pair, estimator in self.estimators.items()},
                             kernel_name=self.kernel_name, features=self.features, lam=self.lam, eta=self.eta,
                             eta_decay=self.eta_decay, seed=self.seed, pretrained=self.pretrained,
                             pretrain_samples=self.pretrain_samples, signal_model=self.signal_model)
