"""Order-size forcing toolkit for 3-uniform hypergraphs."""

__version__ = "0.1.0"

from .core import (
    CapabilityError,
    Hypergraph3,
    LinkGraph,
    complement,
    induced_edge_count,
    induced_subgraph,
    is_clique,
    is_independent,
    link_graph,
    read_graph_text,
    triple_rank,
    triple_unrank,
    write_graph_text,
)
from .canon import CanonicalForm, are_isomorphic, canonical_form

__all__ = [
    "CapabilityError",
    "Hypergraph3",
    "LinkGraph",
    "CanonicalForm",
    "are_isomorphic",
    "canonical_form",
    "complement",
    "induced_edge_count",
    "induced_subgraph",
    "is_clique",
    "is_independent",
    "link_graph",
    "read_graph_text",
    "triple_rank",
    "triple_unrank",
    "write_graph_text",
    "__version__",
]
