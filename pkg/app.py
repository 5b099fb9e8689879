# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Command-Line Entry Point
License: MIT License

This file serves as the main entry point of the experiment runner. It
configures the global rotating log and dispatches to the command-line
parser.
"""

import os
import sys
import logging
from logging.handlers import RotatingFileHandler

from src.config import Config
from src.cli.parser import main


def configure_global_logging() -> logging.Handler:
    """Attaches the global rotating log file to the root logger."""
    os.makedirs(Config.LOG_DIR, exist_ok=True)
    global_log_handler = RotatingFileHandler(
        os.path.join(Config.LOG_DIR, Config.GLOBAL_LOG_FILE),
        maxBytes=10 * 1024 * 1024,  # 10 MB per file
        backupCount=5
    )
    global_log_handler.setFormatter(logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    ))
    global_log_handler.setLevel(getattr(logging, Config.LOG_LEVEL))

    root_logger = logging.getLogger()
    root_logger.addHandler(global_log_handler)
    root_logger.setLevel(getattr(logging, Config.LOG_LEVEL))
    return global_log_handler


# Main execution block
if __name__ == '__main__':
    configure_global_logging()
    logging.getLogger(__name__).info(f"SuccessiveShifts started: {' '.join(sys.argv[1:])}")
    sys.exit(main(sys.argv[1:]))
