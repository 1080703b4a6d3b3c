"""Cycle-basis node importance for weighted networks, with benchmark
indicators, weighted SIR spreading and seed-group evaluation."""

__version__ = "0.1.0"

from .centrality import (  # noqa: E402
    ScoreVector,
    SeedSet,
    compute_indicators,
    register_indicator,
    top_k,
    wcycle,
    weighted_betweenness,
    weighted_coreness,
    weighted_degree,
    weighted_h_index,
)
from .cycles import BasicCycle, CycleBasis, cycle_basis, cycle_weight, cycles_containing  # noqa: E402
from .epidemic import OutbreakResult, WsirParams, epidemic_threshold, wsir_average, wsir_run  # noqa: E402
from .graph import (  # noqa: E402
    GraphStats,
    IngestOptions,
    WeightedGraph,
    graph_stats,
    hop_distances,
    parse_edge_list,
    parse_pajek,
    read_graph,
    serialize_edge_list,
    spanning_forest,
    strength,
    weighted_distances,
)

__all__ = [
    "__version__",
    "ScoreVector", "SeedSet", "compute_indicators", "register_indicator", "top_k", "wcycle",
    "weighted_betweenness", "weighted_coreness", "weighted_degree", "weighted_h_index",
    "BasicCycle", "CycleBasis", "cycle_basis", "cycle_weight", "cycles_containing",
    "OutbreakResult", "WsirParams", "epidemic_threshold", "wsir_average", "wsir_run",
    "GraphStats", "IngestOptions", "WeightedGraph", "graph_stats", "hop_distances",
    "parse_edge_list", "parse_pajek", "read_graph", "serialize_edge_list", "spanning_forest",
    "strength", "weighted_distances",
]
