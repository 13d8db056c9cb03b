"""Simulation and exact computation for m-neighbor complexes of random graphs."""

from ._kernel import IMPLEMENTATION as KERNEL_IMPLEMENTATION
from .complexes import (
    SimplicialComplex,
    m_neighbor_complex,
    sample_linial_meshulam,
    support_class,
)
from .graph_core import Graph, Seed, common_neighbors, sample_er

__version__ = "0.1.0"

__all__ = [
    "KERNEL_IMPLEMENTATION",
    "Graph",
    "Seed",
    "SimplicialComplex",
    "common_neighbors",
    "m_neighbor_complex",
    "sample_er",
    "sample_linial_meshulam",
    "support_class",
    "__version__",
]
