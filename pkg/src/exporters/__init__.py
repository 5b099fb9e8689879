# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Exporters Package
License: MIT License

This package groups the on-disk formats: the text matrix format, the graph
file, CSV result tables, and the directory layouts of designed shift
sequences and estimator state. Each module reads what it writes.
"""
