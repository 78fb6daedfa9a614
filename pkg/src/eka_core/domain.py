"""
Domain entities for the Expected Key Average metric.
"""
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple


@dataclass(frozen=True)
class EakRecord:
    """
    Accumulated EAK of a node: last-hop component plus relay component.
    """
    node: int
    eak: float
    last_hop_component: float = 0.0
    relay_component: float = 0.0

    def __post_init__(self) -> None:
        if self.eak < 0 or self.last_hop_component < 0 or self.relay_component < 0:
            raise ValueError(f"EAK components of node {self.node} must be non-negative")
        if abs(self.eak - (self.last_hop_component + self.relay_component)) > 1e-9 * max(1.0, self.eak):
            raise ValueError(f"EAK of node {self.node} must equal last-hop plus relay component")

    @classmethod
    def zero(cls, node: int) -> "EakRecord":
        return cls(node=node, eak=0.0)


@dataclass(frozen=True)
class NHList:
    """
    Priority-ordered forwarder list of a node (most preferred first).

    eak_snapshot holds each entry's EAK at selection time; relay_progression holds the
    accumulated relay value after each admission.
    """
    owner: int
    entries: Tuple[int, ...] = ()
    eak_snapshot: Tuple[float, ...] = ()
    relay_progression: Tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if len(set(self.entries)) != len(self.entries):
            raise ValueError(f"NHList of node {self.owner} has duplicate entries")
        if self.owner in self.entries:
            raise ValueError(f"Node {self.owner} cannot forward to itself")
        if len(self.eak_snapshot) != len(self.entries):
            raise ValueError("eak_snapshot must align with entries")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __contains__(self, node: object) -> bool:
        return node in self.entries

    @property
    def is_empty(self) -> bool:
        return not self.entries

    @property
    def primary(self) -> Optional[int]:
        return self.entries[0] if self.entries else None

    def priority(self, node: int) -> int:
        """1-based priority of an entry."""
        return self.entries.index(node) + 1

    @classmethod
    def empty(cls, owner: int) -> "NHList":
        return cls(owner=owner)


@dataclass(frozen=True)
class ForwardingWeights:
    n: int
    weights: Tuple[float, ...]

    def __iter__(self) -> Iterator[float]:
        return iter(self.weights)


@dataclass(frozen=True)
class Candidate:
    """A neighbour considered as forwarder, with the link that reaches it."""
    node: int
    eak: float
    k: float
    f: float
    is_sink: bool = False
