from .cluster_tree import (
    Arc,
    Cluster,
    ClusterGraph,
    ClusterTree,
    boosted_count_bound,
    build_cluster_tree,
    build_hk,
    cluster_levels,
    delta_sequence,
    geometric_deltas,
    instantiate_naive,
    minimal_n0,
    node_count_bound,
    unroll_cluster_view,
)
from .dq import (
    boost_plan,
    dq_graph,
    dq_unique_neighbor,
    girth_boost,
    incidence_equations,
    smallest_prime_at_least,
)

# smallest boosted k=2 instance among strictly increasing deltas <= 12
SMALL_K2_DELTAS = (1, 2, 4, 6)

__all__ = [
    "Arc",
    "Cluster",
    "ClusterGraph",
    "ClusterTree",
    "SMALL_K2_DELTAS",
    "boost_plan",
    "boosted_count_bound",
    "build_cluster_tree",
    "build_hk",
    "cluster_levels",
    "delta_sequence",
    "dq_graph",
    "dq_unique_neighbor",
    "geometric_deltas",
    "girth_boost",
    "incidence_equations",
    "instantiate_naive",
    "minimal_n0",
    "node_count_bound",
    "smallest_prime_at_least",
    "unroll_cluster_view",
]
