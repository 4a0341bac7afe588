"""
Oriented hypergraph engine for hyperdet.

This module computes determinants of {±1}-matrices through the contributor
expansion of their oriented hypergraphs, and checks every result against an
exact integer oracle. It is organized into managers for contributors,
transforms, reconstruction and search.

The main entry point for external code is the DeterminantEngine class.
"""

from .client import EngineClient
from .contributors import ContributorManager
from .facade import DeterminantEngine
from .matrices import derived_matrices, exact_determinant, naive_determinant, parse_matrix, serialize_matrix
from .permutations import Permutation, all_permutations
from .reconstruction import ReconstructionManager
from .search import SearchManager
from .transforms import TransformManager

__all__ = [
    "EngineClient",
    "ContributorManager",
    "TransformManager",
    "ReconstructionManager",
    "SearchManager",
    "DeterminantEngine",
    "Permutation",
    "all_permutations",
    "derived_matrices",
    "exact_determinant",
    "naive_determinant",
    "parse_matrix",
    "serialize_matrix",
]
