"""Embedded graphs on surfaces: widths, surgery, ΔY classes and K6 minors."""
from ._backend import BACKEND
from .embedding import (
    EmbeddedGraph,
    EmbeddingError,
    SurfaceDescriptor,
    build_embedding,
    euler_genus,
    normalize_signature,
    parse_emb,
    radial_graph,
    read_emb,
    trace_facial_walks,
    write_emb,
)
from .graphs import Graph, from_graph6, to_graph6

__all__ = [
    "BACKEND",
    "EmbeddedGraph",
    "EmbeddingError",
    "Graph",
    "SurfaceDescriptor",
    "build_embedding",
    "euler_genus",
    "from_graph6",
    "normalize_signature",
    "parse_emb",
    "radial_graph",
    "read_emb",
    "to_graph6",
    "trace_facial_walks",
    "write_emb",
]
