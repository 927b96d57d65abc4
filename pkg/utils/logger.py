"""
Logging for the toolkit: one application logger ("paalg") configured once by
the command line, and per-module children that propagate to it.

stdout carries JSON payloads, so every handler here writes to stderr or to a
file.
"""

import logging
import sys
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional, Union

import config

_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
_DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def setup_logger(name: str = config.LOGGER_NAME,
                 log_file: Optional[Union[str, Path]] = None,
                 level: int = logging.WARNING) -> logging.Logger:
    """
    Configure the application logger.

    Args:
        name: Logger name, normally config.LOGGER_NAME
        log_file: Also append records to this file; its directory is created
        level: Threshold for the logger and all of its handlers

    Returns:
        The configured logger
    """
    logger = logging.getLogger(name)
    logger.setLevel(level)
    logger.propagate = False

    # Repeated calls (tests, several main() runs) must not stack handlers
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(_FORMAT, datefmt=_DATE_FORMAT)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(path, encoding='utf-8')
        file_handler.setLevel(level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    return logger


def get_logger(name: str) -> logging.Logger:
    """Child of the application logger; 'core.cohomology' → 'paalg.core.cohomology'."""
    if name == config.LOGGER_NAME or name.startswith(config.LOGGER_NAME + '.'):
        return logging.getLogger(name)
    return logging.getLogger(f"{config.LOGGER_NAME}.{name}")


class LoggerMixin:
    """
    Gives a class a child logger named after it and short log_* helpers.
    """

    def __init__(self, logger_name: Optional[str] = None):
        self.logger = get_logger(logger_name or type(self).__name__)

    def log_info(self, message: str):
        self.logger.info(message)

    def log_warning(self, message: str):
        self.logger.warning(message)

    def log_error(self, message: str):
        self.logger.error(message)

    def log_debug(self, message: str):
        self.logger.debug(message)

    @contextmanager
    def timed(self, label: str) -> Iterator[None]:
        """Log the wall time of the enclosed block at debug level."""
        start = time.perf_counter()
        try:
            yield
        finally:
            if self.logger.isEnabledFor(logging.DEBUG):
                self.logger.debug(f"{label}: {time.perf_counter() - start:.3f}s")
