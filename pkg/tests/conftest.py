# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Shared Test Fixtures
License: MIT License
"""

import numpy as np
import pytest

from src.design.config import DesignConfig
from src.design.bcd import bcd_design
from src.graph.generators import random_er_graph
from src.graph.topology import build_support_basis, build_topology


def random_support_shift(basis, rng, scale=1.0):
    """Uniform(-1, 1) entries on the support, scaled to spectral norm `scale`."""
    shift = basis.to_matrix(rng.uniform(-1.0, 1.0, size=basis.e_count))
    return shift * (scale / np.linalg.norm(shift, 2))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def cycle3():
    return build_topology(3, [(1, 2), (2, 3), (3, 1)])


@pytest.fixture
def er_topology():
    """Connected 6-node directed ER graph."""
    return random_er_graph(6, 0.5, directed=True, seed=3)


@pytest.fixture
def er_shifts(er_topology, rng):
    """Three random support-respecting shifts with spectral norm 0.9."""
    basis = build_support_basis(er_topology)
    return [random_support_shift(basis, rng, 0.9) for _ in range(3)]


@pytest.fixture
def consensus_sequence():
    """Consensus design on an undirected 8-node ER graph, L = 4."""
    topology = random_er_graph(8, 0.5, directed=False, seed=11)
    T = np.full((8, 8), 1.0 / 8)
    return bcd_design(T, topology, DesignConfig(L=4, seed=5, max_bcd_sweeps=60))


@pytest.fixture
def small_config_file(tmp_path):
    """Writes an INI file for a small, fast experiment and returns its path."""
    def write(task='design', **sections):
        content = {
            'experiment': {'task': task, 'seed': '7', 'out': str(tmp_path / 'out'), 'trials': '2000', 'seeds': '4'},
            'graph': {'generator': 'er', 'n_nodes': '6', 'p_edge': '0.5', 'directed': 'false'},
            'target': {'builtin': 'consensus'},
            'design': {'L': '3', 'max_sweeps': '40'},
            'fluctuation': {'p_active': '0.9'},
            'estimator': {'features': '20', 'pretrain_samples': '40'},
        }
        for name, values in sections.items():
            content.setdefault(name, {}).update(values)
        path = tmp_path / 'experiment.ini'
        with open(path, 'w', encoding='utf-8') as handle:
            for name, values in content.items():
                handle.write(f"[{name}]\n")
                for key, value in values.items():
                    handle.write(f"{key} = {value}\n")
                handle.write("\n")
        return str(path)
    return write
