# -*- coding: utf-8 -*-
"""
SuccessiveShifts - CSV Table Exporter Module
License: MIT License

Result tables: a mandatory header row, floats at 17 significant digits.
"""

import csv
import logging
import os
from typing import Iterable, Sequence

import numpy as np

from src.utils import format_float

logger = logging.getLogger(__name__)


def _cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    return str(value)


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence]) -> str:
    """
    Writes a CSV table.

    Args:
        path (str): Destination file.
        header (Sequence[str]): Column names.
        rows (Iterable[Sequence]): Rows of the same width as the header.

    Returns:
        str: The path written.
    """
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    count = 0
    with open(path, 'w', encoding='utf-8', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            if len(row) != len(header):
                raise ValueError(f"Row has {len(row)} cells but the header has {len(header)}")
            writer.writerow([_cell(value) for value in row])
            count += 1
    logger.debug(f"Wrote {count} rows to {path}")
    return path


def read_csv(path: str) -> list:
    """Reads a table back as a list of dicts keyed by header (values stay strings)."""
    with open(path, 'r', encoding='utf-8', newline='') as handle:
        return list(csv.DictReader(handle))
