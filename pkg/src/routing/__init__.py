"""
EAK fixpoint, NHList dispatch, topology collection, route construction and delivery.
"""
from .domain import (
    DeliveryTrace, HopRecord, Notification, QueryPacket, RelayInfo, ReplyPacket, RouteSet, RoutingState,
    ScheduledMessage, SinkRecord, SinkTable, TopologyCollection,
)
from .fixpoint import MODES, candidate_inputs, compute_eak_to_sink, is_fixpoint, unstable_nodes
from .dispatch import DispatchResult, dispatch_nhlists
from .topology import collect_topology_at_sink, node_record, primary_depths
from .routes import POLICIES, bottleneck, construct_query_routes, default_destination, layered_pairs
from .delivery import forward_query_and_reply, query_hop_failures, relay_hops, reply_path

__all__ = [
    "DeliveryTrace", "HopRecord", "Notification", "QueryPacket", "RelayInfo", "ReplyPacket", "RouteSet",
    "RoutingState", "ScheduledMessage", "SinkRecord", "SinkTable", "TopologyCollection",
    "MODES", "candidate_inputs", "compute_eak_to_sink", "is_fixpoint", "unstable_nodes",
    "DispatchResult", "dispatch_nhlists",
    "collect_topology_at_sink", "node_record", "primary_depths",
    "POLICIES", "bottleneck", "construct_query_routes", "default_destination", "layered_pairs",
    "forward_query_and_reply", "query_hop_failures", "relay_hops", "reply_path",
]
