"""
Network model: deployments, key pre-distribution and secure links.
"""
from .domain import KeyPool, KeyRing, LinkInfo, NetworkGraph, NodeSpec, Tier
from .failure_models import (
    ConstantFailure, DistanceLinearFailure, FailureModel, UniformFailure, create_failure_model,
)
from .deployment import (
    SINK_ID, assign_key_rings, build_links, build_network, expected_shared_keys, generate_deployment,
    graph_from_topology, h_tier_count, in_range_pairs, key_share_probability, shared_keys,
)
from .export import graph_hash, to_dict, to_dot, to_json, to_schema

__all__ = [
    "KeyPool", "KeyRing", "LinkInfo", "NetworkGraph", "NodeSpec", "Tier",
    "ConstantFailure", "DistanceLinearFailure", "FailureModel", "UniformFailure", "create_failure_model",
    "SINK_ID", "assign_key_rings", "build_links", "build_network", "expected_shared_keys",
    "generate_deployment", "graph_from_topology", "h_tier_count", "in_range_pairs",
    "key_share_probability", "shared_keys",
    "graph_hash", "to_dict", "to_dot", "to_json", "to_schema",
]
