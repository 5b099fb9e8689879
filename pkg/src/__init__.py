# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Source Package
License: MIT License

This file marks the 'src' directory as a Python package.
"""
