"""
Core modules for the Admissible Poisson Toolkit.
"""

from .algebra import AlgebraStructure, Cochain2, Cochain3, LinearMap
from .catalog import AlgebraCatalog
from .data_handler import DataHandler
from .structure import PoissonPair

__all__ = ['AlgebraStructure', 'Cochain2', 'Cochain3', 'LinearMap',
           'AlgebraCatalog', 'DataHandler', 'PoissonPair']
