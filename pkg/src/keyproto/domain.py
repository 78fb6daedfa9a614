"""
Domain entities for group key establishment under the symbolic sealing model.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Tuple

from ..common.exceptions import ProtocolError

SHARE_BITS = 128
SHARE_BYTES = SHARE_BITS // 8


class GroupKind(str, Enum):
    FR = "fR_key"
    BR = "bR_key"


class SealMode(str, Enum):
    PAIRWISE = "pairwise"
    GROUP = "group"


def group_key_id(kind: GroupKind, owner: int) -> str:
    return f"{kind.value}:{owner}"


@dataclass(frozen=True)
class Share:
    """
    Random key-material contribution of one node to one protocol run.
    """
    owner: int
    material: int
    counter: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.material < 2 ** SHARE_BITS:
            raise ValueError(f"Share material must fit in {SHARE_BITS} bits")

    @property
    def atom(self) -> str:
        """Symbolic name of this share, used by the derivation closure."""
        return f"{self.owner}#{self.counter}"


@dataclass(frozen=True)
class GroupKey:
    """
    XOR of all member shares.

    owner is the selector for an fR_key and the queried node for a bR_key; atoms names the
    shares the material combines.
    """
    kind: GroupKind
    owner: int
    members: Tuple[int, ...]
    material: int
    atoms: FrozenSet[str] = frozenset()

    @property
    def key_id(self) -> str:
        return group_key_id(self.kind, self.owner)


@dataclass(frozen=True)
class Envelope:
    """
    Sealed message. Pairwise mode requires every key in required_keys; group mode requires
    the group key named by group_key_id. content lists the share atoms the payload XOR-combines.
    """
    sender: int
    receiver: int
    mode: SealMode
    payload: bytes
    counter: int
    step: int
    tag: bytes
    required_keys: FrozenSet[int] = frozenset()
    group_key_id: Optional[str] = None
    content: FrozenSet[str] = frozenset()

    def __post_init__(self) -> None:
        if self.mode == SealMode.PAIRWISE and not self.required_keys:
            raise ValueError("Pairwise envelopes need at least one required key")
        if self.mode == SealMode.GROUP and self.group_key_id is None:
            raise ValueError("Group envelopes need a group key id")


@dataclass
class ProtocolTranscript:
    """
    Ordered record of one key establishment run and its outcome.
    """
    kind: GroupKind
    owner: int
    members: Tuple[int, ...]
    steps: List[Tuple[int, Envelope]] = field(default_factory=list)
    outcome: Optional[GroupKey] = None
    failure: Optional[str] = None
    error: Optional[ProtocolError] = None
    member_keys: Dict[int, int] = field(default_factory=dict)

    @property
    def established(self) -> bool:
        return self.outcome is not None and self.failure is None

    @property
    def envelopes(self) -> List[Envelope]:
        return [env for _, env in self.steps]

    @property
    def step_count(self) -> int:
        return len({step for step, _ in self.steps})

    def record(self, step: int, envelope: Envelope) -> None:
        self.steps.append((step, envelope))

    def fail(self, error: ProtocolError) -> "ProtocolTranscript":
        self.failure = f"{type(error).__name__}: {error}"
        self.error = error
        self.outcome = None
        return self

    def raise_for_failure(self) -> None:
        if self.error is not None:
            raise self.error
