"""
Domain entities for routing: fixpoint state, sink-side topology, routes and packets.
"""
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from ..eka_core.domain import EakRecord, NHList
from ..keyproto.domain import GroupKind, group_key_id


@dataclass
class RoutingState:
    """
    Result of the EAK fixpoint. selectors is filled by dispatch and is then the inverse of nhlists.
    """
    eak_table: Dict[int, EakRecord]
    nhlists: Dict[int, NHList]
    sink: int
    selectors: Dict[int, FrozenSet[int]] = field(default_factory=dict)
    round: int = 0
    mode: str = "greedy_finalize"
    admission_violations: int = 0

    def eak(self, node: int) -> float:
        return self.eak_table[node].eak

    def nhlist(self, node: int) -> NHList:
        return self.nhlists.get(node, NHList.empty(node))

    def reachable(self) -> List[int]:
        """Non-sink nodes with at least one forwarder."""
        return sorted(n for n, nh in self.nhlists.items() if n != self.sink and not nh.is_empty)

    def unreachable(self) -> List[int]:
        return sorted(n for n, nh in self.nhlists.items() if n != self.sink and nh.is_empty)

    def monotonicity_violations(self) -> List[Tuple[int, int, float]]:
        """(node, admission index, delta) for every admission that lowered the relay value."""
        violations = []
        for node, nh in self.nhlists.items():
            previous = 0.0
            for i, value in enumerate(nh.relay_progression):
                if value - previous < 0:
                    violations.append((node, i, value - previous))
                previous = value
        return violations

    @staticmethod
    def invert(nhlists: Mapping[int, NHList]) -> Dict[int, FrozenSet[int]]:
        inverse: Dict[int, set] = {}
        for owner, nh in nhlists.items():
            for relay in nh.entries:
                inverse.setdefault(relay, set()).add(owner)
        return {node: frozenset(s) for node, s in inverse.items()}


@dataclass(frozen=True)
class Notification:
    """Selection notice from a selector to one of its relays."""
    selector: int
    relay: int
    priority: int


@dataclass(frozen=True)
class RelayInfo:
    node: int
    priority: int
    k: int
    f: float


@dataclass(frozen=True)
class SinkRecord:
    """
    What the sink learns about one node: its relays (with link weights) and its selectors.
    """
    node: int
    relays: Tuple[RelayInfo, ...] = ()
    selectors: Tuple[int, ...] = ()

    @property
    def relay_ids(self) -> Tuple[int, ...]:
        return tuple(r.node for r in self.relays)


@dataclass
class SinkTable:
    sink: int
    records: Dict[int, SinkRecord] = field(default_factory=dict)

    def __contains__(self, node: object) -> bool:
        return node in self.records

    def __len__(self) -> int:
        return len(self.records)

    def forwarders(self, node: int) -> Tuple[int, ...]:
        return self.records[node].relay_ids

    def relay(self, node: int, relay: int) -> RelayInfo:
        for info in self.records[node].relays:
            if info.node == relay:
                return info
        raise KeyError(f"{relay} is not a relay of {node}")


@dataclass(frozen=True)
class ScheduledMessage:
    round: int
    sender: int
    receiver: int
    records: Tuple[int, ...]


@dataclass
class TopologyCollection:
    sink_table: SinkTable
    unaggregated_messages: int
    aggregated_messages: int
    unreachable: List[int] = field(default_factory=list)
    schedule: List[ScheduledMessage] = field(default_factory=list)

    @property
    def saved_messages(self) -> int:
        return self.unaggregated_messages - self.aggregated_messages


@dataclass
class RouteSet:
    """
    Layered (node-set, forwarder-set) pairs from the destination towards the sink, and the
    simple paths they expand to. Paths are stored sink-first.
    """
    destination: int
    hops: List[Tuple[FrozenSet[int], FrozenSet[int]]] = field(default_factory=list)
    expanded_paths: List[Tuple[int, ...]] = field(default_factory=list)
    policy: str = "max_min_keys"
    chosen_path: Optional[Tuple[int, ...]] = None
    truncated: bool = False
    bottlenecks: List[int] = field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return not self.expanded_paths

    @property
    def max_hops(self) -> int:
        return max((len(p) - 1 for p in self.expanded_paths), default=0)


@dataclass
class QueryPacket:
    """Packet walking an explicit route; cursor is the index of the node holding it."""
    route: Tuple[int, ...]
    payload: bytes
    cursor: int = 0

    kind = GroupKind.BR

    @property
    def current(self) -> int:
        return self.route[self.cursor]

    @property
    def at_end(self) -> bool:
        return self.cursor == len(self.route) - 1

    @property
    def next_hop(self) -> int:
        if self.at_end:
            raise IndexError("Packet already at the end of its route")
        return self.route[self.cursor + 1]

    def sealing_key_id(self) -> str:
        """Group key of the node currently holding the packet."""
        return group_key_id(self.kind, self.current)

    def advance(self) -> int:
        nxt = self.next_hop
        self.cursor += 1
        return nxt


@dataclass
class ReplyPacket(QueryPacket):
    kind = GroupKind.FR


@dataclass(frozen=True)
class HopRecord:
    index: int
    direction: str
    sender: int
    receiver: int
    key_id: str
    payload_digest: str


@dataclass
class DeliveryTrace:
    destination: int
    query_path: Tuple[int, ...]
    reply_path: Tuple[int, ...] = ()
    query_hops: List[HopRecord] = field(default_factory=list)
    reply_hops: List[HopRecord] = field(default_factory=list)
    failure: Optional[str] = None
    failed_hop: Optional[int] = None
    failed_direction: Optional[str] = None

    @property
    def delivered(self) -> bool:
        return self.failure is None

    @property
    def hop_count(self) -> int:
        return len(self.query_hops) + len(self.reply_hops)
