"""
Utility modules for the Admissible Poisson Toolkit.
"""

from .logger import LoggerMixin, get_logger, setup_logger

__all__ = ['LoggerMixin', 'get_logger', 'setup_logger']
