"""
Convergecast of (selectors, relays) records to the sink along primary relays.
"""
from typing import Dict, List, Optional, Set

from ..common.logging import setup_logger
from ..common.metrics import MetricsCollector
from ..netmodel.domain import NetworkGraph
from .domain import RelayInfo, RoutingState, ScheduledMessage, SinkRecord, SinkTable, TopologyCollection

logger = setup_logger(__name__)


def primary_depths(state: RoutingState) -> Dict[int, int]:
    """
    Hops from each node to the sink following NHList[0]. Nodes whose primary chain runs into
    a loop are left out.
    """
    depths: Dict[int, int] = {state.sink: 0}
    looping: Set[int] = set()
    for node in state.reachable():
        chain: List[int] = []
        on_chain: Set[int] = set()
        u = node
        while u is not None and u not in depths and u not in looping and u not in on_chain:
            chain.append(u)
            on_chain.add(u)
            u = state.nhlist(u).primary
        if u is None or u not in depths:
            looping.update(chain)
            continue
        d = depths[u]
        for v in reversed(chain):
            d += 1
            depths[v] = d
    return depths


def node_record(node: int, state: RoutingState, graph: NetworkGraph) -> SinkRecord:
    relays = tuple(
        RelayInfo(node=r, priority=i, k=graph.link(node, r).k, f=graph.link(node, r).f)
        for i, r in enumerate(state.nhlist(node).entries, start=1)
    )
    return SinkRecord(node=node, relays=relays, selectors=tuple(sorted(state.selectors.get(node, ()))))


def collect_topology_at_sink(
    state: RoutingState, graph: NetworkGraph, metrics: Optional[MetricsCollector] = None
) -> TopologyCollection:
    """
    Deepest nodes send first; every node forwards one message holding its own record plus
    everything received from below. Without aggregation each record would travel its own
    hops separately.
    """
    depths = primary_depths(state)
    senders = sorted((n for n in depths if n != state.sink), key=lambda n: (-depths[n], n))
    max_depth = max(depths.values(), default=0)
    inbox: Dict[int, List[SinkRecord]] = {n: [] for n in depths}
    schedule: List[ScheduledMessage] = []
    unaggregated = 0
    for node in senders:
        carried = [node_record(node, state, graph)] + inbox[node]
        primary = state.nhlist(node).primary
        inbox[primary].extend(carried)
        unaggregated += len(carried)
        schedule.append(ScheduledMessage(
            round=max_depth - depths[node] + 1, sender=node, receiver=primary,
            records=tuple(r.node for r in carried),
        ))

    table = SinkTable(sink=state.sink)
    table.records[state.sink] = node_record(state.sink, state, graph)
    for record in sorted(inbox[state.sink], key=lambda r: r.node):
        table.records[record.node] = record

    unreachable = state.unreachable()
    if unreachable:
        logger.warning(f"{len(unreachable)} nodes have no forwarders and are missing from the sink table")
    looping = [n for n in state.reachable() if n not in depths]
    if looping:
        logger.warning(f"Primary relay chains of {looping} never reach the sink; their records are lost")
        unreachable = sorted(unreachable + looping)
    if metrics is not None:
        metrics.record("topology_unaggregated", unaggregated)
        metrics.record("topology_aggregated", len(schedule))
    return TopologyCollection(
        sink_table=table,
        unaggregated_messages=unaggregated,
        aggregated_messages=len(schedule),
        unreachable=unreachable,
        schedule=schedule,
    )
