# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Command-Line Parser Module
License: MIT License

`app.py <task> [--config PATH] [--seed N] [--out DIR] [--workers N] [--trials N]`

Exit codes: 0 success, 1 internal or numerical failure, 2 bad input.
"""

import argparse
import logging
import sys
from typing import List, Optional

from src.errors import InputError, SuccessiveShiftsError
from .commands import COMMANDS
from .config_loader import TASKS, load_experiment_config

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='successive-shifts',
        description='Design successive graph shift operators and evaluate them under link failures.')
    parser.add_argument('task', nargs='?', choices=TASKS,
                        help="Task to run; defaults to [experiment] task in the configuration file.")
    parser.add_argument('--config', metavar='PATH', help='INI experiment configuration file.')
    parser.add_argument('--seed', type=int, help='Experiment seed (overrides the configuration).')
    parser.add_argument('--out', metavar='DIR', help='Output directory (overrides the configuration).')
    parser.add_argument('--workers', type=int, help='Monte-Carlo worker threads; results do not depend on it.')
    parser.add_argument('--trials', type=int, help='Monte-Carlo trials (overrides the configuration).')
    parser.add_argument('--no-run-log', action='store_true', help='Do not write a per-run log file.')
    return parser


def _print_summary(task: str, result: dict):
    if task == 'design':
        print(f"final objective: {result['final_objective']:.17g}")
        print(f"sweeps: {result['sweeps']} (converged: {result['converged']})")
        for index, error in enumerate(result['per_round_error'], start=1):
            print(f"round {index}: {error:.17g}")
    for key, value in result.items():
        if key not in ('outputs', 'final_objective', 'per_round_error', 'sweeps', 'converged'):
            print(f"{key}: {value}")
    for path in result.get('outputs', []):
        print(f"wrote {path}")


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parses arguments, runs the task and maps errors to exit codes.

    Returns:
        int: The process exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2

    try:
        config = load_experiment_config(args.config, task=args.task, seed=args.seed, out_dir=args.out,
                                        workers=args.workers, trials=args.trials)
        result = COMMANDS[config.task](config, send_log=not args.no_run_log)
    except InputError as e:
        logger.error(f"Input error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except SuccessiveShiftsError as e:
        logger.error(f"Task failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.error("Unexpected failure", exc_info=True)
        print(f"internal error: {e}", file=sys.stderr)
        return 1

    _print_summary(config.task, result)
    return 0
