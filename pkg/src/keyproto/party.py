"""
Protocol parties and the directory that holds them.
"""
import hmac
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Mapping, Optional

from ..common.exceptions import ChannelError, IntegrityError, MissingGroupKeyError, ReplayError
from ..netmodel.domain import NetworkGraph
from .crypto import compute_tag, generate_share, group_sealing_key, pairwise_sealing_key, share_stream
from .domain import Envelope, GroupKey, SealMode, Share


@dataclass
class Party:
    """
    One node's protocol state: its key ring, monotone send counter, last counter seen per
    sender and the group keys it holds.
    """
    node_id: int
    ring: FrozenSet[int]
    seed: int = 0
    counter: int = 0
    share_nonce: int = 0
    last_seen: Dict[int, int] = field(default_factory=dict)
    group_keys: Dict[str, GroupKey] = field(default_factory=dict)
    shares: Dict[int, Share] = field(default_factory=dict)

    def new_share(self) -> Share:
        """Fresh share for the next protocol run."""
        share = generate_share(self.node_id, share_stream(self.seed, self.node_id, self.share_nonce), self.share_nonce)
        self.shares[share.counter] = share
        self.share_nonce += 1
        return share

    def _next_counter(self) -> int:
        self.counter += 1
        return self.counter

    def seal_pairwise(
        self, receiver: int, payload: bytes, step: int, required_keys: Iterable[int],
        content: FrozenSet[str] = frozenset(),
    ) -> Envelope:
        keys = frozenset(required_keys)
        if not keys or not keys <= self.ring:
            raise ChannelError(f"Node {self.node_id} holds no pairwise channel to {receiver}")
        counter = self._next_counter()
        tag = compute_tag(pairwise_sealing_key(keys), self.node_id, receiver, counter, step, SealMode.PAIRWISE, payload)
        return Envelope(
            sender=self.node_id, receiver=receiver, mode=SealMode.PAIRWISE, payload=payload, counter=counter,
            step=step, tag=tag, required_keys=keys, content=content,
        )

    def seal_group(
        self, receiver: int, payload: bytes, step: int, key_id: str, content: FrozenSet[str] = frozenset(),
    ) -> Envelope:
        group_key = self.group_keys.get(key_id)
        if group_key is None:
            raise MissingGroupKeyError(f"Node {self.node_id} does not hold {key_id}")
        counter = self._next_counter()
        tag = compute_tag(group_sealing_key(group_key.material), self.node_id, receiver, counter, step,
                          SealMode.GROUP, payload)
        return Envelope(
            sender=self.node_id, receiver=receiver, mode=SealMode.GROUP, payload=payload, counter=counter,
            step=step, tag=tag, group_key_id=key_id, content=content,
        )

    def open(self, envelope: Envelope) -> bytes:
        """
        Checks possession, then the tag, then freshness; returns the payload.
        """
        if envelope.mode == SealMode.PAIRWISE:
            if not envelope.required_keys <= self.ring:
                raise ChannelError(f"Node {self.node_id} lacks keys required by envelope from {envelope.sender}")
            key = pairwise_sealing_key(envelope.required_keys)
        else:
            group_key = self.group_keys.get(envelope.group_key_id)
            if group_key is None:
                raise MissingGroupKeyError(f"Node {self.node_id} does not hold {envelope.group_key_id}")
            key = group_sealing_key(group_key.material)

        expected = compute_tag(key, envelope.sender, envelope.receiver, envelope.counter, envelope.step,
                               envelope.mode, envelope.payload)
        if not hmac.compare_digest(expected, envelope.tag):
            raise IntegrityError(f"Tag mismatch on envelope {envelope.sender}->{envelope.receiver} step {envelope.step}")

        if envelope.counter <= self.last_seen.get(envelope.sender, 0):
            raise ReplayError(f"Stale counter {envelope.counter} from node {envelope.sender}")
        self.last_seen[envelope.sender] = envelope.counter
        return envelope.payload

    def install(self, group_key: GroupKey) -> None:
        self.group_keys[group_key.key_id] = group_key


class KeyDirectory:
    """
    Holds every party plus the registry of established group keys.
    """

    def __init__(self, rings: Mapping[int, Iterable[int]], seed: int = 0):
        self.seed = seed
        self.parties: Dict[int, Party] = {
            node: Party(node_id=node, ring=frozenset(ring), seed=seed) for node, ring in rings.items()
        }
        self.group_keys: Dict[str, GroupKey] = {}

    @classmethod
    def from_graph(cls, graph: NetworkGraph, seed: int = 0) -> "KeyDirectory":
        return cls({n.id: n.ring.keys for n in graph.nodes}, seed)

    def party(self, node: int) -> Party:
        try:
            return self.parties[node]
        except KeyError:
            raise KeyError(f"Unknown party {node}") from None

    def pairwise_keys(self, u: int, v: int) -> FrozenSet[int]:
        return self.party(u).ring & self.party(v).ring

    def register(self, group_key: GroupKey) -> None:
        self.group_keys[group_key.key_id] = group_key

    def group_key(self, key_id: str) -> Optional[GroupKey]:
        return self.group_keys.get(key_id)

    def holders(self, key_id: str) -> FrozenSet[int]:
        return frozenset(node for node, p in self.parties.items() if key_id in p.group_keys)
