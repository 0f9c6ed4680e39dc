"""Numerical laboratory for spectral-gap perturbation experiments on
Erdos-Renyi random graphs: seeded sampling, dense spectral operators,
edge-perturbation predicates with an exact-recompute oracle, typicality
certification, eigenvector delocalization profiles, and small-ball
concentration estimates."""

__version__ = "0.1.0"

from .graph import Graph, GnpSpec, add_edge, non_edges, remove_edge, sample_gnp
from .spectral import second_eigenvector, spectral_gap

__all__ = [
    "Graph",
    "GnpSpec",
    "sample_gnp",
    "add_edge",
    "remove_edge",
    "non_edges",
    "spectral_gap",
    "second_eigenvector",
    "__version__",
]
