"""
Domain entities for the network model: key pool, rings, nodes, links and the graph.
"""
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx


class Tier(str, Enum):
    L = "L"
    H = "H"
    SINK = "Sink"


@dataclass(frozen=True)
class KeyPool:
    """
    Global pool of key identifiers [0, size).
    """
    size: int

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError(f"Key pool size must be >= 1, got {self.size}")

    def __contains__(self, key_id: int) -> bool:
        return 0 <= key_id < self.size


@dataclass(frozen=True)
class KeyRing:
    """Key identifiers pre-distributed to one node."""
    keys: FrozenSet[int] = frozenset()

    @property
    def size(self) -> int:
        return len(self.keys)

    def __contains__(self, key_id: int) -> bool:
        return key_id in self.keys

    def sorted(self) -> List[int]:
        return sorted(self.keys)


@dataclass(frozen=True)
class NodeSpec:
    id: int
    tier: Tier
    position: Tuple[float, float]
    range_m: float
    ring: KeyRing = field(default_factory=KeyRing)

    def __post_init__(self) -> None:
        if self.id < 0:
            raise ValueError(f"Node ids must be non-negative, got {self.id}")
        if self.range_m <= 0:
            raise ValueError(f"Node {self.id}: range must be positive, got {self.range_m}")

    def distance_to(self, other: "NodeSpec") -> float:
        return float(((self.position[0] - other.position[0]) ** 2 + (self.position[1] - other.position[1]) ** 2) ** 0.5)


@dataclass(frozen=True)
class LinkInfo:
    """
    Undirected secure link. Endpoints are stored as (lower id, higher id).
    """
    u: int
    v: int
    shared_keys: FrozenSet[int]
    f: float
    distance_m: float = 0.0

    def __post_init__(self) -> None:
        if self.u == self.v:
            raise ValueError(f"Self link on node {self.u}")
        if self.u > self.v:
            u, v = self.v, self.u
            object.__setattr__(self, "u", u)
            object.__setattr__(self, "v", v)
        object.__setattr__(self, "shared_keys", frozenset(self.shared_keys))
        if not self.shared_keys:
            raise ValueError(f"Link ({self.u}, {self.v}) needs at least one shared key")
        if not 0.0 <= self.f < 1.0:
            raise ValueError(f"Link ({self.u}, {self.v}): failure probability must be in [0, 1), got {self.f}")

    @property
    def k(self) -> int:
        return len(self.shared_keys)

    @property
    def endpoints(self) -> Tuple[int, int]:
        return (self.u, self.v)

    def other(self, node: int) -> int:
        if node == self.u:
            return self.v
        if node == self.v:
            return self.u
        raise KeyError(f"Node {node} is not an endpoint of ({self.u}, {self.v})")


@dataclass(frozen=True)
class NetworkGraph:
    """
    Deployed network. Nodes and links are kept sorted so that serialization is canonical.
    """
    nodes: Tuple[NodeSpec, ...]
    links: Tuple[LinkInfo, ...] = ()
    area: Tuple[float, float] = (100.0, 100.0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(sorted(self.nodes, key=lambda n: n.id)))
        object.__setattr__(self, "links", tuple(sorted(self.links, key=lambda l: l.endpoints)))
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise ValueError("Node ids must be unique")
        if sum(1 for n in self.nodes if n.tier == Tier.SINK) != 1:
            raise ValueError("Network must contain exactly one sink")
        known = set(ids)
        seen = set()
        for link in self.links:
            if link.u not in known or link.v not in known:
                raise ValueError(f"Link {link.endpoints} references an unknown node")
            if link.endpoints in seen:
                raise ValueError(f"Duplicate link {link.endpoints}")
            seen.add(link.endpoints)

    @cached_property
    def sink(self) -> int:
        return next(n.id for n in self.nodes if n.tier == Tier.SINK)

    @cached_property
    def _node_index(self) -> Dict[int, NodeSpec]:
        return {n.id: n for n in self.nodes}

    @cached_property
    def _link_index(self) -> Dict[Tuple[int, int], LinkInfo]:
        return {l.endpoints: l for l in self.links}

    @cached_property
    def _adjacency(self) -> Dict[int, List[int]]:
        adjacency: Dict[int, List[int]] = {n.id: [] for n in self.nodes}
        for link in self.links:
            adjacency[link.u].append(link.v)
            adjacency[link.v].append(link.u)
        return {node: sorted(neigh) for node, neigh in adjacency.items()}

    @property
    def node_ids(self) -> List[int]:
        return [n.id for n in self.nodes]

    def node(self, node_id: int) -> NodeSpec:
        try:
            return self._node_index[node_id]
        except KeyError:
            raise KeyError(f"Unknown node {node_id}") from None

    def neighbors(self, node_id: int) -> List[int]:
        return list(self._adjacency[node_id])

    def link(self, u: int, v: int) -> Optional[LinkInfo]:
        return self._link_index.get((min(u, v), max(u, v)))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        for n in self.nodes:
            g.add_node(n.id, tier=n.tier.value, pos=n.position)
        for l in self.links:
            g.add_edge(l.u, l.v, k=l.k, f=l.f)
        return g

    @cached_property
    def hop_levels(self) -> Dict[int, int]:
        """Hop distance from the sink for every node of the sink's component."""
        return dict(nx.single_source_shortest_path_length(self.to_networkx(), self.sink))

    def sink_component(self) -> FrozenSet[int]:
        return frozenset(self.hop_levels)

    def with_rings(self, rings: Dict[int, Iterable[int]]) -> "NetworkGraph":
        nodes = tuple(replace(n, ring=KeyRing(frozenset(rings.get(n.id, n.ring.keys)))) for n in self.nodes)
        return NetworkGraph(nodes=nodes, links=(), area=self.area)

    def with_links(self, links: Iterable[LinkInfo]) -> "NetworkGraph":
        return NetworkGraph(nodes=self.nodes, links=tuple(links), area=self.area)
