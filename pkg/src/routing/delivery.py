"""
Sealed query forwarding (sink -> destination) and reply routing (destination -> sink).
"""
from typing import Callable, List, Optional, Sequence

from ..common.exceptions import ProtocolError, UnreachableError
from ..common.logging import setup_logger
from ..common.metrics import MetricsCollector
from ..keyproto.crypto import payload_digest
from ..keyproto.domain import Envelope
from ..keyproto.party import KeyDirectory
from ..netmodel.domain import NetworkGraph
from .domain import DeliveryTrace, HopRecord, QueryPacket, ReplyPacket, RouteSet, RoutingState

logger = setup_logger(__name__)

Interceptor = Callable[[Envelope], Envelope]


def reply_path(destination: int, state: RoutingState) -> List[int]:
    """Primary relay chain from a node to the sink."""
    path = [destination]
    node = destination
    while node != state.sink:
        nxt = state.nhlist(node).primary
        if nxt is None:
            raise UnreachableError(f"Node {node} has no relay towards the sink", break_point=node)
        if nxt in path:
            raise UnreachableError(f"Primary relays loop back to {nxt} after {path}", break_point=nxt)
        path.append(nxt)
        node = nxt
    return path


def _walk(
    packet: QueryPacket, direction: str, directory: KeyDirectory, trace: DeliveryTrace,
    hops: List[HopRecord], interceptor: Optional[Interceptor],
) -> bool:
    while not packet.at_end:
        index = packet.cursor
        sender, receiver = packet.current, packet.next_hop
        key_id = packet.sealing_key_id()
        try:
            envelope = directory.party(sender).seal_group(receiver, packet.payload, index + 1, key_id)
            if interceptor is not None:
                envelope = interceptor(envelope)
            packet.payload = directory.party(receiver).open(envelope)
        except ProtocolError as e:
            trace.failure = f"{type(e).__name__}: {e}"
            trace.failed_hop = index
            trace.failed_direction = direction
            logger.warning(f"{direction} to {trace.destination} failed at hop {index} ({sender}->{receiver}): {e}")
            return False
        hops.append(HopRecord(
            index=index, direction=direction, sender=sender, receiver=receiver, key_id=key_id,
            payload_digest=payload_digest(envelope.payload),
        ))
        packet.advance()
    return True


def forward_query_and_reply(
    route: RouteSet,
    state: RoutingState,
    directory: KeyDirectory,
    path: Optional[Sequence[int]] = None,
    interceptor: Optional[Interceptor] = None,
    metrics: Optional[MetricsCollector] = None,
) -> DeliveryTrace:
    """
    Query hops are sealed under the sender's bR_key, reply hops under the sender's fR_key.

    A hop failure aborts delivery and is recorded with its hop index.
    """
    query_route = tuple(path if path is not None else (route.chosen_path or ()))
    trace = DeliveryTrace(destination=route.destination, query_path=query_route)
    if route.destination == state.sink or not query_route:
        return trace
    if query_route[0] != state.sink or query_route[-1] != route.destination:
        raise ValueError(f"Path {query_route} does not lead from the sink to {route.destination}")

    query = QueryPacket(route=query_route, payload=f"query|{route.destination}".encode())
    if _walk(query, "query", directory, trace, trace.query_hops, interceptor):
        trace.reply_path = tuple(reply_path(route.destination, state))
        reply = ReplyPacket(route=trace.reply_path, payload=f"reply|{route.destination}".encode())
        _walk(reply, "reply", directory, trace, trace.reply_hops, interceptor)

    if metrics is not None:
        metrics.record("query_hops", len(trace.query_hops))
        metrics.record("reply_hops", len(trace.reply_hops))
    return trace


def relay_hops(path: Sequence[int], state: RoutingState, graph: NetworkGraph) -> List[List[float]]:
    """
    Failure probabilities of every forwarder group along a reply path (destination first).
    """
    groups = []
    for node in path[:-1]:
        nh = state.nhlist(node)
        if nh.is_empty:
            raise UnreachableError(f"Node {node} has no forwarders", break_point=node)
        groups.append([graph.link(node, r).f for r in nh.entries])
    return groups


def query_hop_failures(path: Sequence[int], graph: NetworkGraph) -> List[List[float]]:
    """Single-link failure groups along a sink-first query path."""
    return [[graph.link(path[i], path[i + 1]).f] for i in range(len(path) - 1)]
