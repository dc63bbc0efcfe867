"""Workbench for pair-interaction-constrained triangle families on convex point sets."""

from .core import (
    ConfigKind,
    ConvexArena,
    ForbiddenSet,
    Triangle,
    classify_geometric,
    classify_pair,
    verify_family,
)
from .extremal import ex, ex_prime
from .puzzle import Grid, PuzzleState, search_best

__version__ = "0.1.0"

__all__ = [
    "ConfigKind",
    "ConvexArena",
    "ForbiddenSet",
    "Triangle",
    "classify_geometric",
    "classify_pair",
    "verify_family",
    "ex",
    "ex_prime",
    "Grid",
    "PuzzleState",
    "search_best",
    "__version__",
]
