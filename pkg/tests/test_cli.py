# -*- coding: utf-8 -*-
"""End-to-end tests of the command line and the experiment runner."""

import json
import logging
import os

import numpy as np
import pytest

from src.cli.config_loader import load_experiment_config, with_overrides
from src.cli.parser import main
from src.errors import DimensionError, InputError
from src.experiments import ExperimentRunner
from src.exporters.csv_table import read_csv
from src.exporters.matrix import write_matrix
from src.exporters.shift_sequence import read_shift_sequence
from src.session import close_session_logger, setup_session_logger


def run_cli(*argv):
    return main([*argv, '--no-run-log'])


def read_text(path):
    with open(path, encoding='utf-8') as handle:
        return handle.read()


def test_design_task_writes_shift_directory(small_config_file, tmp_path, capsys):
    assert run_cli('design', '--config', small_config_file()) == 0
    out = tmp_path / 'out'
    sequence = read_shift_sequence(str(out / 'shifts'))
    assert sequence.L == 3

    rounds = read_csv(str(out / 'design_rounds.csv'))
    assert [row['round'] for row in rounds] == ['1', '2', '3']
    history = read_csv(str(out / 'design_history.csv'))
    assert len(history) == sequence.sweeps
    assert 'final objective' in capsys.readouterr().out


def test_task_defaults_to_configuration(small_config_file, tmp_path):
    assert run_cli('--config', small_config_file(task='run')) == 0
    rows = read_csv(str(tmp_path / 'out' / 'run.csv'))
    assert rows[0]['method'] == 'successive'
    assert len(rows) == 4


def test_run_task_with_fir_baseline(small_config_file, tmp_path):
    path = small_config_file(design={'fir_coeffs': '0.5 0.3 0.2', 'fir_shift': 'laplacian'})
    assert run_cli('run', '--config', path) == 0
    methods = {row['method'] for row in read_csv(str(tmp_path / 'out' / 'run.csv'))}
    assert methods == {'successive', 'fir'}


def test_fluctuate_rows_per_activation_source(small_config_file, tmp_path):
    path = small_config_file(fluctuation={'p_active': '0.8, 1.0', 'variant': 'squared'})
    assert run_cli('fluctuate', '--config', path) == 0
    rows = read_csv(str(tmp_path / 'out' / 'fluctuation.csv'))
    assert [float(row['p_active']) for row in rows] == [0.8, 1.0]
    assert float(rows[1]['mse']) == 0.0
    assert float(rows[1]['bound']) == 0.0
    assert float(rows[0]['mse']) <= float(rows[0]['bound']) + 3 * float(rows[0]['bound_stderr'])


def test_results_do_not_depend_on_worker_count(small_config_file, tmp_path):
    path = small_config_file()
    for workers in ('1', '4'):
        assert run_cli('fluctuate', '--config', path, '--trials', '5000', '--workers', workers,
                       '--out', str(tmp_path / f"w{workers}")) == 0
    assert read_text(tmp_path / 'w1' / 'fluctuation.csv') == read_text(tmp_path / 'w4' / 'fluctuation.csv')


def test_same_seed_gives_identical_design(small_config_file, tmp_path):
    path = small_config_file()
    for name in ('a', 'b'):
        assert run_cli('design', '--config', path, '--out', str(tmp_path / name)) == 0
    for index in (1, 2, 3):
        assert read_text(tmp_path / 'a' / 'shifts' / f"S_{index}.mat") == \
            read_text(tmp_path / 'b' / 'shifts' / f"S_{index}.mat")


def test_bound_task_reports_every_variant(small_config_file, tmp_path):
    assert run_cli('bound', '--config', small_config_file()) == 0
    rows = read_csv(str(tmp_path / 'out' / 'bound.csv'))
    assert {(row['variant'], row['mean_term']) for row in rows} == {
        ('stated', 'outer'), ('stated', 'literal'), ('squared', 'outer'), ('squared', 'literal')}


def test_estimate_task(small_config_file, tmp_path):
    assert run_cli('estimate', '--config', small_config_file()) == 0
    out = tmp_path / 'out'
    rows = read_csv(str(out / 'estimate.csv'))
    assert len(rows) == 5
    assert os.path.isfile(out / 'estimator' / 'rff_meta.json')


def test_estimate_task_with_field_signals(small_config_file, tmp_path):
    path = small_config_file(experiment={'signal_model': 'field', 'signal_noise': '0.1'})
    assert run_cli('estimate', '--config', path) == 0
    meta = json.loads(read_text(tmp_path / 'out' / 'estimator' / 'rff_meta.json'))
    assert meta['signal_model'] == 'field'
    assert meta['pretrained_rounds'] == 3


def test_signal_model_is_validated(small_config_file):
    with pytest.raises(InputError):
        load_experiment_config(small_config_file(experiment={'signal_model': 'pink'}))
    with pytest.raises(InputError):
        load_experiment_config(small_config_file(experiment={'signal_noise': '-1'}))


def test_design_without_convergence_fails_when_required(small_config_file):
    path = small_config_file(design={'max_sweeps': '1', 'epsilon': '1e-12', 'require_convergence': 'true'})
    assert run_cli('design', '--config', path) == 1


def test_sparsify_task(small_config_file, tmp_path):
    path = small_config_file(estimator={'drop_rate': '0.3'})
    assert run_cli('sparsify', '--config', path) == 0
    rows = read_csv(str(tmp_path / 'out' / 'sparsify.csv'))
    for row in rows[:-1]:
        assert int(row['messages_sent']) <= int(row['messages_full'])


def test_reusing_stored_shifts(small_config_file, tmp_path):
    path = small_config_file()
    assert run_cli('design', '--config', path) == 0
    reuse = small_config_file(experiment={'shifts': str(tmp_path / 'out' / 'shifts'),
                                          'out': str(tmp_path / 'reuse')})
    assert run_cli('run', '--config', reuse) == 0
    assert not os.path.exists(tmp_path / 'reuse' / 'shifts')


def test_bad_inputs_exit_with_code_two(small_config_file, tmp_path):
    assert run_cli('design', '--config', str(tmp_path / 'missing.ini')) == 2
    assert run_cli('design', '--config', small_config_file(design={'colour': 'blue'})) == 2
    assert run_cli('design', '--config', small_config_file(design={'max_sweeps': 'many'})) == 2
    assert run_cli('teleport') == 2
    assert run_cli('design', '--config', small_config_file(), '--workers', '0') == 2


def test_config_paths_resolve_next_to_file(tmp_path):
    with open(tmp_path / 'g.txt', 'w', encoding='utf-8') as handle:
        handle.write("3 directed self_loops=1\n1 2\n2 3\n3 1\n")
    with open(tmp_path / 'c.ini', 'w', encoding='utf-8') as handle:
        handle.write("[graph]\nfile = g.txt\n[experiment]\nout = results\n")

    config = load_experiment_config(str(tmp_path / 'c.ini'), task='design', seed=3)
    assert config.graph.file == str(tmp_path / 'g.txt')
    assert config.out_dir == str(tmp_path / 'results')
    assert config.design.seed == 3
    assert with_overrides(config, seed=9).design.seed == 9


def test_missing_referenced_file_is_rejected(tmp_path):
    with open(tmp_path / 'c.ini', 'w', encoding='utf-8') as handle:
        handle.write("[target]\nfile = nowhere.mat\n")
    with pytest.raises(InputError):
        load_experiment_config(str(tmp_path / 'c.ini'))


def test_runner_records_failure(small_config_file, tmp_path):
    target = write_matrix(str(tmp_path / 'T.mat'), np.eye(4))
    config = load_experiment_config(small_config_file(target={'file': target}), task='design')
    runner = ExperimentRunner(config, send_log=False)
    with pytest.raises(DimensionError):
        runner.run()
    assert runner.processing_status == 'error'
    assert '4x4' in runner.error_message
    assert runner.status()['error'] == runner.error_message


def test_runner_completes(small_config_file):
    runner = ExperimentRunner(load_experiment_config(small_config_file(), task='design'), send_log=False)
    result = runner.run()
    assert runner.processing_status == 'completed'
    assert runner.status() == {'run_id': runner.run_id, 'status': 'completed', 'progress': 100}
    assert result['sweeps'] >= 1


def test_session_logger_writes_run_file(tmp_path):
    session_logger = setup_session_logger('run-1', str(tmp_path), 'DEBUG')
    session_logger.debug('design started')
    close_session_logger(session_logger)
    assert 'design started' in read_text(tmp_path / 'run-1' / 'run-1.log')
    assert not session_logger.propagate
    assert not logging.getLogger('session.run-1').handlers
