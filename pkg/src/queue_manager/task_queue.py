# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Task Queue Module
License: MIT License

This module implements the task queue shared by the worker threads. Tasks are
(index, payload) pairs; it uses collections.deque for efficient FIFO access.
"""

from collections import deque
import logging
import threading
from typing import Any, Optional, Tuple

# Configure logger for this module
logger = logging.getLogger(__name__)


class TaskQueue:
    """Thread-safe FIFO of (index, payload) tasks."""

    def __init__(self):
        self._tasks = deque()
        # A lock to protect access to the deque from multiple worker threads
        self._lock = threading.Lock()

    def add_task(self, index: int, payload: Any):
        """
        Appends a task to the queue.

        Args:
            index (int): Position of the task's result in the output list.
            payload (Any): Argument handed to the task function.
        """
        with self._lock:
            self._tasks.append((index, payload))

    def get_task(self) -> Optional[Tuple[int, Any]]:
        """
        Retrieves the next task. This call is non-blocking.

        Returns:
            Optional[Tuple[int, Any]]: The task, or None if the queue is empty.
        """
        with self._lock:
            if not self._tasks:
                return None
            return self._tasks.popleft()

    def size(self) -> int:
        """Returns the current number of pending tasks."""
        with self._lock:
            return len(self._tasks)
