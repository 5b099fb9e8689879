# -*- coding: utf-8 -*-
"""Tests for the on-disk formats: matrices, graphs, shift sequences, estimators, tables."""

import json
import os

import numpy as np
import pytest

from src.errors import InputError
from src.estimator import offline_pretrain
from src.exporters.activation_file import load_activation
from src.exporters.csv_table import read_csv, write_csv
from src.exporters.estimator_state import read_estimator_bank, write_estimator_bank
from src.exporters.graph_file import read_graph, write_graph
from src.exporters.matrix import read_matrix, read_signal, write_matrix
from src.exporters.shift_sequence import read_shift_sequence, write_shift_sequence


def write_text(path, text):
    with open(path, 'w', encoding='utf-8') as handle:
        handle.write(text)
    return str(path)


def test_matrix_file_preserves_values_exactly(tmp_path, rng):
    matrix = rng.standard_normal((3, 4)) * 1e-7
    path = write_matrix(str(tmp_path / 'sub' / 'm.mat'), matrix)
    np.testing.assert_array_equal(read_matrix(path), matrix)
    with open(path, encoding='utf-8') as handle:
        assert handle.readline() == '3 4\n'


def test_vector_is_written_as_column(tmp_path):
    path = write_matrix(str(tmp_path / 'x.mat'), np.array([1.0, 2.5]))
    assert read_matrix(path).shape == (2, 1)
    np.testing.assert_array_equal(read_signal(path), [1.0, 2.5])


def test_malformed_matrix_files(tmp_path):
    with pytest.raises(InputError):
        read_matrix(str(tmp_path / 'missing.mat'))
    with pytest.raises(InputError):
        read_matrix(write_text(tmp_path / 'short.mat', "2 2\n1 2\n3\n"))
    with pytest.raises(InputError):
        read_matrix(write_text(tmp_path / 'text.mat', "2 2\n1 2\nthree 4\n"))
    with pytest.raises(InputError):
        read_signal(write_text(tmp_path / 'wide.mat', "1 2\n1 2\n"))


def test_graph_file_with_comments(tmp_path):
    path = write_text(tmp_path / 'g.txt', "# ring\n3 undirected self_loops=0\n1 2\n2 3  # last\n")
    topology = read_graph(path)
    assert topology.n_nodes == 3
    assert not topology.allow_self_loops
    assert set(topology.edges) == {(0, 1), (1, 0), (1, 2), (2, 1)}


def test_written_graph_reads_back(tmp_path, er_topology):
    topology = read_graph(write_graph(str(tmp_path / 'g.txt'), er_topology))
    assert set(topology.edges) == set(er_topology.edges)
    assert topology.allow_self_loops


@pytest.mark.parametrize('text', ["3 sideways self_loops=1\n", "3 directed\n", "3 directed self_loops=1\n1 2 3\n",
                                  "3 directed self_loops=1\n1 4\n", ""])
def test_malformed_graph_files(tmp_path, text):
    with pytest.raises(InputError):
        read_graph(write_text(tmp_path / 'bad.txt', text))


def test_shift_sequence_directory(tmp_path, consensus_sequence):
    directory = write_shift_sequence(str(tmp_path / 'shifts'), consensus_sequence)
    assert sorted(os.listdir(directory)) == ['S_1.mat', 'S_2.mat', 'S_3.mat', 'S_4.mat', 'graph.txt', 'meta.json']
    with open(os.path.join(directory, 'meta.json'), encoding='utf-8') as handle:
        meta = json.load(handle)
    assert meta['L'] == 4
    assert meta['sweeps'] == consensus_sequence.sweeps

    loaded = read_shift_sequence(directory)
    for original, restored in zip(consensus_sequence.shifts, loaded.shifts):
        np.testing.assert_array_equal(original, restored)
    assert loaded.weights == pytest.approx(consensus_sequence.weights)
    assert set(loaded.topology.edges) == set(consensus_sequence.topology.edges)


def test_shift_sequence_without_graph_uses_support(tmp_path, consensus_sequence):
    directory = write_shift_sequence(str(tmp_path / 'shifts'), consensus_sequence)
    os.remove(os.path.join(directory, 'graph.txt'))
    topology = read_shift_sequence(directory).topology
    support = np.any([shift != 0 for shift in consensus_sequence.shifts], axis=0)
    np.fill_diagonal(support, True)
    np.testing.assert_array_equal(topology.adjacency().astype(bool), support)


def test_shift_directory_needs_meta(tmp_path):
    with pytest.raises(InputError):
        read_shift_sequence(str(tmp_path))


def test_estimator_bank_reloads_with_same_predictions(tmp_path, consensus_sequence, rng):
    bank = offline_pretrain(consensus_sequence.topology, consensus_sequence.shifts, K_samples=20, seed=5, features=16)
    directory = write_estimator_bank(str(tmp_path / 'estimator'), bank)
    with open(os.path.join(directory, 'rff_meta.json'), encoding='utf-8') as handle:
        meta = json.load(handle)
    assert meta['eta_schedule'] == 'constant'
    assert meta['pretrained_rounds'] == consensus_sequence.L

    loaded = read_estimator_bank(directory)
    assert loaded.pretrained
    assert loaded.signal_model == bank.signal_model
    assert list(loaded.pairs()) == list(bank.pairs())
    for pair in bank.pairs():
        original, restored = bank.estimators[pair], loaded.estimators[pair]
        u = rng.standard_normal(original.model.dim)
        np.testing.assert_array_equal(restored.model.W, original.model.W)
        np.testing.assert_array_equal(restored.schedule, original.schedule)
        for round_index in (1, consensus_sequence.L):
            assert restored.predict(u, round_index) == original.predict(u, round_index)


def test_activation_sources(tmp_path):
    np.testing.assert_array_equal(load_activation(0.8, 2), np.full((2, 2), 0.8))
    np.testing.assert_array_equal(load_activation(' 0.5 ', 2), np.full((2, 2), 0.5))

    matrix_path = write_matrix(str(tmp_path / 'p.mat'), np.array([[1.0, 0.2], [0.3, 1.0]]))
    assert load_activation(matrix_path, 2)[1, 0] == 0.3

    edges_path = write_text(tmp_path / 'p.txt', "# src dst p\n1 2 0.25\n")
    edges = load_activation(edges_path, 2)
    assert edges[1, 0] == 0.25
    assert edges[0, 1] == 1.0


def test_activation_errors(tmp_path):
    with pytest.raises(InputError):
        load_activation(str(tmp_path / 'nope.txt'), 2)
    with pytest.raises(InputError):
        load_activation(write_text(tmp_path / 'range.txt', "1 3 0.5\n"), 2)
    with pytest.raises(InputError):
        load_activation(1.5, 2)


def test_csv_cells(tmp_path):
    path = write_csv(str(tmp_path / 't.csv'), ['name', 'flag', 'count', 'value'],
                     [['a', True, np.int64(3), 0.1], ['b', False, 4, np.float64(2.0)]])
    with open(path, encoding='utf-8') as handle:
        lines = handle.read().splitlines()
    assert lines[0] == 'name,flag,count,value'
    assert lines[1].startswith('a,1,3,0.1')
    rows = read_csv(path)
    assert rows[1]['flag'] == '0'
    assert float(rows[1]['value']) == 2.0
    with pytest.raises(ValueError):
        write_csv(str(tmp_path / 'bad.csv'), ['a', 'b'], [[1]])
