"""
Sink-side route construction from the collected (node, forwarder-set) relation.
"""
from itertools import islice
from typing import FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from ..common.exceptions import ConfigurationError, UnreachableError
from .domain import RouteSet, SinkTable

POLICIES = ("max_min_keys", "min_hop", "all_paths")


def layered_pairs(sink_table: SinkTable, destination: int) -> List[Tuple[FrozenSet[int], FrozenSet[int]]]:
    """
    (X_t, X_{t+1}) with X_0 = {D} and X_{t+1} the forwarders of X_t's non-sink nodes that no
    earlier layer holds. Nodes without a record or without forwarders prune their branch; the
    relation must still reach the sink somewhere.
    """
    sink = sink_table.sink
    pairs = []
    layer = frozenset({destination})
    seen = {destination}
    breaks: List[int] = []
    reached = False
    while any(x != sink for x in layer):
        nxt = set()
        for x in sorted(layer):
            if x == sink:
                continue
            if x not in sink_table or not sink_table.forwarders(x):
                breaks.append(x)
                continue
            nxt.update(v for v in sink_table.forwarders(x) if v == sink or v not in seen)
        if not nxt:
            break
        seen.update(nxt)
        reached = reached or sink in nxt
        pairs.append((layer, frozenset(nxt)))
        layer = frozenset(nxt)
    if not reached:
        point = breaks[0] if breaks else destination
        raise UnreachableError(f"Route to {destination} breaks at node {point}", break_point=point)
    return pairs


def relay_graph(sink_table: SinkTable, pairs: Sequence[Tuple[FrozenSet[int], FrozenSet[int]]]) -> nx.DiGraph:
    g = nx.DiGraph()
    expanded = set()
    for layer, nxt in pairs:
        for x in sorted(layer) + sorted(nxt - layer):
            if x == sink_table.sink or x not in sink_table or x in expanded:
                continue
            expanded.add(x)
            for info in sink_table.records[x].relays:
                g.add_edge(x, info.node, k=info.k, f=info.f)
    return g


def bottleneck(path: Sequence[int], sink_table: SinkTable) -> int:
    """Smallest shared-key count along a sink-first path."""
    return min(sink_table.relay(path[i + 1], path[i]).k for i in range(len(path) - 1))


def construct_query_routes(
    sink_table: SinkTable, destination: int, policy: str = "max_min_keys", path_cap: int = 128
) -> RouteSet:
    """
    Builds the layered pairs, expands them into simple paths (at most path_cap, in priority
    order) and picks one according to policy.
    """
    if policy not in POLICIES:
        raise ConfigurationError(f"Unknown route policy '{policy}', expected one of {POLICIES}")
    if destination == sink_table.sink:
        return RouteSet(destination=destination, policy=policy)
    if destination not in sink_table:
        raise UnreachableError(f"Destination {destination} is not in the sink table", break_point=destination)

    pairs = layered_pairs(sink_table, destination)
    g = relay_graph(sink_table, pairs)
    enumerated = list(islice(nx.all_simple_paths(g, destination, sink_table.sink), path_cap + 1))
    truncated = len(enumerated) > path_cap
    paths = [tuple(reversed(p)) for p in enumerated[:path_cap]]
    if not paths:
        raise UnreachableError(f"No path from sink to {destination}", break_point=destination)
    bottlenecks = [bottleneck(p, sink_table) for p in paths]

    if policy == "min_hop":
        chosen = min(range(len(paths)), key=lambda i: (len(paths[i]), i))
    elif policy == "max_min_keys":
        chosen = min(range(len(paths)), key=lambda i: (-bottlenecks[i], len(paths[i]), i))
    else:
        chosen = 0
    return RouteSet(
        destination=destination,
        hops=pairs,
        expanded_paths=paths,
        policy=policy,
        chosen_path=paths[chosen],
        truncated=truncated,
        bottlenecks=bottlenecks,
    )


def default_destination(state_depths: dict, sink: int) -> Optional[int]:
    """Reachable node farthest from the sink, lowest id on ties."""
    candidates = [(d, n) for n, d in state_depths.items() if n != sink]
    if not candidates:
        return None
    return min(candidates, key=lambda t: (-t[0], t[1]))[1]
