"""Twin-width toolkit: trigraph contractions, the planar family G_k, its
7-contraction witness, an exact solver for small graphs, and skeleton
analysis."""

from .construction import GkGraph, build_gk, degree_histogram, icosahedron, skeleton_subgraph
from .planar import PlaneMultigraph, contract_embedded_edge, find_light_edge, separating_cycles_up_to
from .solver import naive_twinwidth, twinwidth_at_most, twinwidth_exact
from .trigraph import (
    ContractionSequence,
    ContractionStep,
    Trigraph,
    WidthTrace,
    contract,
    from_black_edges,
    max_red_degree,
    red_degree,
    replay,
    verify_certificate,
)
from .witness import synthesize_witness

__version__ = "0.1.0"

__all__ = [
    "ContractionSequence",
    "ContractionStep",
    "GkGraph",
    "PlaneMultigraph",
    "Trigraph",
    "WidthTrace",
    "build_gk",
    "contract",
    "contract_embedded_edge",
    "degree_histogram",
    "find_light_edge",
    "from_black_edges",
    "icosahedron",
    "max_red_degree",
    "naive_twinwidth",
    "red_degree",
    "replay",
    "separating_cycles_up_to",
    "skeleton_subgraph",
    "synthesize_witness",
    "twinwidth_at_most",
    "twinwidth_exact",
    "verify_certificate",
]
