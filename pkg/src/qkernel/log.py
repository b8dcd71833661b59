"""
log.py

Logging setup. Library modules import ``logger`` from loguru directly; the CLI
calls ``configure_logging`` once so that messages go to stderr as
``[LEVEL] message`` and stdout stays free for tables.
"""

import sys

from loguru import logger

LOG_FORMAT = "[{level}] {message}"


def configure_logging(verbose=False):
    """
    Route loguru output to stderr. INFO by default, DEBUG when verbose.
    """
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else "INFO", format=LOG_FORMAT)
    return logger
