"""Community detection in hypergraphs by direct modularity optimization."""

from ._hlouvain import (
    Hypergraph,
    __version__,
    ami,
    cluster,
    edge_composition,
    generate,
    modularity,
    suggest_tau,
    tune,
    update_alpha,
)

__all__ = [
    "Hypergraph",
    "__version__",
    "ami",
    "cluster",
    "edge_composition",
    "generate",
    "modularity",
    "suggest_tau",
    "tune",
    "update_alpha",
]
