# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Queue Manager Package
License: MIT License

This package manages the task queue and worker pool that execute independent
Monte-Carlo chunks in parallel. Results are always returned in task order, so
the worker count never changes a result.
"""

from .task_queue import TaskQueue
from .worker_pool import WorkerPool

__all__ = ['TaskQueue', 'WorkerPool']
