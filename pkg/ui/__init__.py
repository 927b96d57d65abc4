"""
Command-line interface for the Admissible Poisson Toolkit.
"""

from .cli import CommandResult, main, run

__all__ = ['CommandResult', 'main', 'run']
