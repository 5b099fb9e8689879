# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Worker Pool Module
License: MIT License

This module manages a pool of worker threads that pull tasks from a TaskQueue
until it is empty. NumPy releases the GIL inside its kernels, so threads give
real parallelism for the vectorized Monte-Carlo chunks.
"""

import logging
import threading
from typing import Any, Callable, List, Optional, Sequence

from .task_queue import TaskQueue

# Configure logger for this module
logger = logging.getLogger(__name__)


class WorkerPool:
    """
    Runs a function over a list of payloads with a fixed number of worker
    threads and returns the results in payload order.
    """
    def __init__(self, num_workers: int = 1, name: str = 'ChunkWorker'):
        """
        Initializes the WorkerPool.

        Args:
            num_workers (int): Number of worker threads; 1 runs inline.
            name (str): Thread name prefix.
        """
        self.num_workers = max(1, int(num_workers))
        self.name = name
        self.workers = []
        self.is_running = False
        self._results = {}
        self._errors = {}
        self._results_lock = threading.Lock()
        logger.debug(f"Worker pool initialized with {self.num_workers} workers.")

    def map(self, function: Callable[[Any], Any], payloads: Sequence[Any],
            on_done: Optional[Callable[[], None]] = None) -> List[Any]:
        """
        Applies `function` to every payload.

        Args:
            function (Callable): The task function.
            payloads (Sequence): Task arguments.
            on_done (Callable): Optional callback after each finished task (progress bars).

        Returns:
            List[Any]: Results in the order of `payloads`.
        """
        if self.num_workers == 1 or len(payloads) <= 1:
            results = []
            for payload in payloads:
                results.append(function(payload))
                if on_done:
                    on_done()
            return results

        queue = TaskQueue()
        for index, payload in enumerate(payloads):
            queue.add_task(index, payload)
        self._results, self._errors = {}, {}
        self.start_workers(function, queue, on_done)
        self.stop_workers()

        if self._errors:
            first = min(self._errors)
            raise self._errors[first]
        return [self._results[index] for index in range(len(payloads))]

    def start_workers(self, function: Callable[[Any], Any], queue: TaskQueue,
                      on_done: Optional[Callable[[], None]] = None):
        """Starts the worker threads; each one drains the shared queue."""
        self.is_running = True
        self.workers = []
        for i in range(min(self.num_workers, queue.size())):
            worker_thread = threading.Thread(target=self._worker_task, args=(i, function, queue, on_done),
                                             daemon=True, name=f"{self.name}-{i}")
            self.workers.append(worker_thread)
            worker_thread.start()
        logger.debug(f"{len(self.workers)} worker threads have been launched.")

    def _worker_task(self, worker_id: int, function: Callable[[Any], Any], queue: TaskQueue,
                     on_done: Optional[Callable[[], None]]):
        """
        The main task executed by each worker thread. It pulls tasks until the
        queue is empty or the pool is stopped after a failure.
        """
        while self.is_running:
            task = queue.get_task()
            if task is None:
                break
            index, payload = task
            try:
                result = function(payload)
                with self._results_lock:
                    self._results[index] = result
                    if on_done:
                        on_done()
            except Exception as e:
                logger.error(f"Worker {worker_id} failed on task {index}: {e}", exc_info=True)
                with self._results_lock:
                    self._errors[index] = e
                self.is_running = False

    def stop_workers(self):
        """Waits for every worker thread to finish."""
        for worker_thread in self.workers:
            worker_thread.join()
        self.is_running = False
        self.workers = []
