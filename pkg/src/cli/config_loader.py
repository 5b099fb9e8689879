# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Experiment Configuration Loader Module
License: MIT License

Reads the flat INI experiment file into an immutable ExperimentConfig.
Precedence: command-line flags, then the INI file, then `Config` defaults.
Unknown sections and keys are rejected.
"""

import configparser
import logging
import os
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

from src.config import Config
from src.design.config import DesignConfig
from src.errors import InputError
from src.filtering.signals import check_signal_model

logger = logging.getLogger(__name__)

TASKS = ('design', 'run', 'fluctuate', 'bound', 'estimate', 'sparsify')
BUILTIN_TARGETS = ('consensus', 'identity', 'random-projection')

ALLOWED_KEYS = {
    'experiment': {'task', 'seed', 'out', 'workers', 'trials', 'shifts', 'signal', 'signal_model', 'signal_noise',
                   'seeds', 'run_id'},
    'graph': {'file', 'generator', 'n_nodes', 'p_edge', 'directed', 'self_loops', 'seed'},
    'target': {'file', 'builtin', 'rank', 'seed'},
    'design': {'l', 'weights', 'weight_scheme', 'weight_ratio', 'epsilon', 'max_sweeps', 'init_scheme',
               'init_scale', 'ridge', 'stop_on', 'require_convergence', 'fir_coeffs', 'fir_shift'},
    'fluctuation': {'p_active', 'rho', 'variant', 'mean_term'},
    'estimator': {'features', 'kernel', 'scale', 'lambda', 'eta', 'eta_decay', 'pretrain', 'pretrain_samples',
                  'frozen', 'drop_rate', 'freeze_after'},
}


@dataclass(frozen=True)
class GraphSpec:
    file: Optional[str] = None
    generator: str = 'er'
    n_nodes: int = 10
    p_edge: float = 0.4
    directed: bool = True
    self_loops: bool = True
    seed: Optional[int] = None


@dataclass(frozen=True)
class TargetSpec:
    file: Optional[str] = None
    builtin: str = 'consensus'
    rank: int = 1
    seed: Optional[int] = None


@dataclass(frozen=True)
class FluctuationSpec:
    p_active: Tuple[str, ...] = ('0.9',)
    rho: Optional[float] = None
    variant: str = 'stated'
    mean_term: str = 'outer'


@dataclass(frozen=True)
class EstimatorSpec:
    features: int = Config.ESTIMATOR_FEATURES
    kernel: str = Config.ESTIMATOR_KERNEL
    scale: Optional[float] = None
    lam: float = Config.ESTIMATOR_LAMBDA
    eta: Optional[float] = None
    eta_decay: bool = False
    pretrain: bool = True
    pretrain_samples: int = Config.PRETRAIN_SAMPLES
    frozen: bool = False
    drop_rate: float = 0.3
    freeze_after: Optional[int] = None


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything one CLI task needs; a pure function of this object and its seed."""
    task: str
    seed: int = 0
    out_dir: str = 'results'
    workers: int = Config.DEFAULT_WORKERS
    trials: int = Config.DEFAULT_TRIALS
    seeds: int = 50
    shifts_dir: Optional[str] = None
    signal_file: Optional[str] = None
    signal_model: str = Config.SIGNAL_MODEL
    signal_noise: float = Config.SIGNAL_NOISE
    run_id: Optional[str] = None
    graph: GraphSpec = field(default_factory=GraphSpec)
    target: TargetSpec = field(default_factory=TargetSpec)
    design: DesignConfig = field(default_factory=lambda: DesignConfig(L=4))
    fir_coeffs: Tuple[float, ...] = ()
    fir_shift: str = 'adjacency'
    fluctuation: FluctuationSpec = field(default_factory=FluctuationSpec)
    estimator: EstimatorSpec = field(default_factory=EstimatorSpec)

    def __post_init__(self):
        if self.task not in TASKS:
            raise InputError(f"Unknown task '{self.task}'. Expected one of {', '.join(TASKS)}")
        if self.workers < 1:
            raise InputError(f"workers must be at least 1, got {self.workers}")
        if self.trials < 1:
            raise InputError(f"trials must be at least 1, got {self.trials}")
        if self.seeds < 1:
            raise InputError(f"seeds must be at least 1, got {self.seeds}")
        if self.seed < 0:
            raise InputError(f"seed must be a nonnegative integer, got {self.seed}")
        if self.target.file is None and self.target.builtin not in BUILTIN_TARGETS:
            raise InputError(f"Unknown builtin target '{self.target.builtin}'. "
                             f"Expected one of {', '.join(BUILTIN_TARGETS)}")
        if self.fir_shift not in ('adjacency', 'laplacian'):
            raise InputError(f"fir_shift must be 'adjacency' or 'laplacian', got '{self.fir_shift}'")
        check_signal_model(self.signal_model, self.signal_noise)
        for label, path in (('graph file', self.graph.file), ('target file', self.target.file),
                            ('signal file', self.signal_file)):
            if path is not None and not os.path.isfile(path):
                raise InputError(f"The {label} does not exist: {path}")
        if self.shifts_dir is not None and not os.path.isdir(self.shifts_dir):
            raise InputError(f"The shift directory does not exist: {self.shifts_dir}")


def _parse(section: str, key: str, raw: str, kind):
    try:
        if kind is bool:
            lowered = raw.strip().lower()
            if lowered in ('1', 'true', 'yes', 'on'):
                return True
            if lowered in ('0', 'false', 'no', 'off'):
                return False
            raise ValueError(f"not a boolean: '{raw}'")
        if kind is tuple:
            return tuple(float(token) for token in raw.replace(',', ' ').split())
        return kind(raw.strip())
    except ValueError as e:
        raise InputError(f"Invalid value for [{section}] {key}: {e}") from e


def _read_ini(path: str) -> configparser.ConfigParser:
    if not os.path.isfile(path):
        raise InputError(f"Configuration file not found: {path}")
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read(path, encoding='utf-8')
    except configparser.Error as e:
        raise InputError(f"Malformed configuration file {path}: {e}") from e
    for section in parser.sections():
        if section not in ALLOWED_KEYS:
            raise InputError(f"Unknown section [{section}] in {path}")
        unknown = set(parser[section]) - ALLOWED_KEYS[section]
        if unknown:
            raise InputError(f"Unknown key(s) in [{section}] of {path}: {', '.join(sorted(unknown))}")
    return parser


def load_experiment_config(path: Optional[str] = None, task: Optional[str] = None, seed: Optional[int] = None,
                           out_dir: Optional[str] = None, workers: Optional[int] = None,
                           trials: Optional[int] = None) -> ExperimentConfig:
    """
    Builds an ExperimentConfig from an INI file and command-line overrides.

    Args:
        path (str): INI file; None uses defaults only.
        task (str): Task name; overrides [experiment] task.
        seed, out_dir, workers, trials: Flag overrides.

    Returns:
        ExperimentConfig: The validated configuration.
    """
    ini = _read_ini(path) if path else configparser.ConfigParser(interpolation=None)

    def get(section, key, kind=str, default=None):
        if ini.has_option(section, key):
            return _parse(section, key, ini.get(section, key), kind)
        return default

    base_dir = os.path.dirname(os.path.abspath(path)) if path else os.getcwd()

    def resolve(value):
        if value is None or os.path.isabs(value):
            return value
        return os.path.normpath(os.path.join(base_dir, value))

    experiment_seed = seed if seed is not None else get('experiment', 'seed', int, 0)
    graph = GraphSpec(
        file=resolve(get('graph', 'file')),
        generator=get('graph', 'generator', str, 'er'),
        n_nodes=get('graph', 'n_nodes', int, 10),
        p_edge=get('graph', 'p_edge', float, 0.4),
        directed=get('graph', 'directed', bool, True),
        self_loops=get('graph', 'self_loops', bool, True),
        seed=get('graph', 'seed', int, None),
    )
    if graph.file is None and graph.generator != 'er':
        raise InputError(f"Unknown graph generator '{graph.generator}'. Only 'er' is available")
    target = TargetSpec(
        file=resolve(get('target', 'file')),
        builtin=get('target', 'builtin', str, 'consensus'),
        rank=get('target', 'rank', int, 1),
        seed=get('target', 'seed', int, None),
    )
    L = get('design', 'l', int, 4)
    weights = get('design', 'weights', tuple, None)
    design = DesignConfig(
        L=L,
        weights=weights,
        weight_scheme=get('design', 'weight_scheme', str, Config.DESIGN_WEIGHT_SCHEME),
        weight_ratio=get('design', 'weight_ratio', float, Config.DESIGN_WEIGHT_RATIO),
        epsilon=get('design', 'epsilon', float, Config.DESIGN_EPSILON),
        max_bcd_sweeps=get('design', 'max_sweeps', int, Config.DESIGN_MAX_SWEEPS),
        init_scheme=get('design', 'init_scheme', str, 'scaled-random'),
        init_scale=get('design', 'init_scale', float, 1.0),
        seed=experiment_seed,
        ridge=get('design', 'ridge', float, 0.0),
        stop_on=get('design', 'stop_on', str, 'unweighted'),
        require_convergence=get('design', 'require_convergence', bool, False),
    )
    p_active_raw = get('fluctuation', 'p_active', str, '0.9')
    fluctuation = FluctuationSpec(
        p_active=tuple(resolve_p(token, resolve) for token in p_active_raw.replace(',', ' ').split()),
        rho=get('fluctuation', 'rho', float, None),
        variant=get('fluctuation', 'variant', str, 'stated'),
        mean_term=get('fluctuation', 'mean_term', str, 'outer'),
    )
    estimator = EstimatorSpec(
        features=get('estimator', 'features', int, Config.ESTIMATOR_FEATURES),
        kernel=get('estimator', 'kernel', str, Config.ESTIMATOR_KERNEL),
        scale=get('estimator', 'scale', float, None),
        lam=get('estimator', 'lambda', float, Config.ESTIMATOR_LAMBDA),
        eta=get('estimator', 'eta', float, None),
        eta_decay=get('estimator', 'eta_decay', bool, False),
        pretrain=get('estimator', 'pretrain', bool, True),
        pretrain_samples=get('estimator', 'pretrain_samples', int, Config.PRETRAIN_SAMPLES),
        frozen=get('estimator', 'frozen', bool, False),
        drop_rate=get('estimator', 'drop_rate', float, 0.3),
        freeze_after=get('estimator', 'freeze_after', int, None),
    )
    config = ExperimentConfig(
        task=task or get('experiment', 'task', str, 'design'),
        seed=experiment_seed,
        out_dir=out_dir or resolve(get('experiment', 'out', str, 'results')),
        workers=workers if workers is not None else get('experiment', 'workers', int, Config.DEFAULT_WORKERS),
        trials=trials if trials is not None else get('experiment', 'trials', int, Config.DEFAULT_TRIALS),
        seeds=get('experiment', 'seeds', int, 50),
        shifts_dir=resolve(get('experiment', 'shifts')),
        signal_file=resolve(get('experiment', 'signal')),
        signal_model=get('experiment', 'signal_model', str, Config.SIGNAL_MODEL),
        signal_noise=get('experiment', 'signal_noise', float, Config.SIGNAL_NOISE),
        run_id=get('experiment', 'run_id'),
        graph=graph,
        target=target,
        design=design,
        fir_coeffs=get('design', 'fir_coeffs', tuple, ()),
        fir_shift=get('design', 'fir_shift', str, 'adjacency'),
        fluctuation=fluctuation,
        estimator=estimator,
    )
    logger.debug(f"Loaded experiment configuration: {config}")
    return config


def resolve_p(token: str, resolve) -> str:
    """A P_ac source stays a number when it parses as one, otherwise it is a path."""
    try:
        float(token)
        return token
    except ValueError:
        return resolve(token)


def with_overrides(config: ExperimentConfig, **changes) -> ExperimentConfig:
    """Returns a copy with some top-level fields replaced (validated again)."""
    if 'seed' in changes and 'design' not in changes:
        changes['design'] = replace(config.design, seed=changes['seed'])
    return replace(config, **changes)
