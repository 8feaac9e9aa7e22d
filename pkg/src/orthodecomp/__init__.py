"""Orthogonal tree decompositions: construction, measurement and certificates."""

from .decomp import (
    Layering,
    PathDecomposition,
    TreeDecomposition,
    WeakPathDecomposition,
    layered_width,
    magnitude,
    orthogonality,
    validate,
    width,
)
from .errors import CapExceeded, OrthoError, ValidationError
from .graphs import Graph

__version__ = "0.1.0"
