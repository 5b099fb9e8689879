# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Command-Line Package
License: MIT License

This package holds the argument parser, the INI configuration loader and one
command function per task.
"""
