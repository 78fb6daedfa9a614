"""
fR_key and bR_key establishment runs.

fR (selector s, relays r_1..r_n):
  steps 1..n      s -> r_i  invite           sealed under the s-r_i shared keys
  steps n+1..2n   r_i -> s  share of r_i     sealed likewise
  steps 2n+1..3n  s -> r_i  XOR of all shares except r_i's

bR (node v, selectors s_1..s_m):
  steps 1..m      v -> s_j  setup            sealed under fR(s_j)
  steps m+1..2m   s_j -> v  share of s_j     sealed under fR(s_j)
  step 2m+1       v -> s_j  XOR of all shares except s_j's, one envelope per selector
"""
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence

from ..common.exceptions import ChannelError, IntegrityError, MissingGroupKeyError, ProtocolError
from ..common.logging import setup_logger
from .crypto import combine_shares, material_bytes
from .domain import Envelope, GroupKey, GroupKind, ProtocolTranscript, Share, group_key_id
from .party import KeyDirectory

logger = setup_logger(__name__)

Interceptor = Callable[[Envelope], Envelope]


def _deliver(
    transcript: ProtocolTranscript, step: int, envelope: Envelope, directory: KeyDirectory,
    interceptor: Optional[Interceptor],
) -> bytes:
    if interceptor is not None:
        envelope = interceptor(envelope)
    transcript.record(step, envelope)
    return directory.party(envelope.receiver).open(envelope)


def _check_members(owner: int, others: Sequence[int], role: str) -> None:
    if not others:
        raise ValueError(f"Node {owner}: at least one {role} is required")
    if len(set(others)) != len(others) or owner in others:
        raise ValueError(f"Node {owner}: {role}s must be distinct and exclude the owner")


def _finish(
    transcript: ProtocolTranscript, directory: KeyDirectory, kind: GroupKind, owner: int,
    shares: Dict[int, Share], member_keys: Dict[int, int],
) -> ProtocolTranscript:
    transcript.member_keys = dict(member_keys)
    if len(set(member_keys.values())) != 1:
        return transcript.fail(IntegrityError(f"{group_key_id(kind, owner)}: members disagree on the key"))
    group_key = GroupKey(
        kind=kind,
        owner=owner,
        members=transcript.members,
        material=member_keys[owner],
        atoms=frozenset(s.atom for s in shares.values()),
    )
    for member in transcript.members:
        directory.party(member).install(group_key)
    directory.register(group_key)
    transcript.outcome = group_key
    return transcript


def run_fr_key_exchange(
    selector: int, relays: Sequence[int], directory: KeyDirectory, interceptor: Optional[Interceptor] = None,
) -> ProtocolTranscript:
    """
    Establishes fR_key = XOR of the selector's and every relay's share.

    A relay without a pairwise channel aborts the run before step 1. Envelope failures abort
    at the failing step; both are recorded in the transcript.
    """
    relays = tuple(relays)
    _check_members(selector, relays, "relay")
    transcript = ProtocolTranscript(kind=GroupKind.FR, owner=selector, members=(selector,) + relays)
    channels = {}
    for relay in relays:
        keys = directory.pairwise_keys(selector, relay)
        if not keys:
            return transcript.fail(ChannelError(f"No pairwise channel between selector {selector} and relay {relay}"))
        channels[relay] = keys

    n = len(relays)
    key_id = group_key_id(GroupKind.FR, selector)
    sel = directory.party(selector)
    shares: Dict[int, Share] = {selector: sel.new_share()}
    member_keys: Dict[int, int] = {}
    try:
        for i, relay in enumerate(relays, start=1):
            invite = sel.seal_pairwise(relay, f"invite|{key_id}".encode(), i, channels[relay])
            _deliver(transcript, i, invite, directory, interceptor)

        received: Dict[int, int] = {}
        for i, relay in enumerate(relays, start=1):
            party = directory.party(relay)
            shares[relay] = party.new_share()
            reply = party.seal_pairwise(
                selector, material_bytes(shares[relay].material), n + i, channels[relay],
                content=frozenset({shares[relay].atom}),
            )
            received[relay] = int.from_bytes(_deliver(transcript, n + i, reply, directory, interceptor), "big")

        member_keys[selector] = combine_shares([shares[selector].material, *received.values()])
        all_atoms = frozenset(s.atom for s in shares.values())
        for i, relay in enumerate(relays, start=1):
            partial = member_keys[selector] ^ received[relay]
            dispatch = sel.seal_pairwise(
                relay, material_bytes(partial), 2 * n + i, channels[relay],
                content=all_atoms - {shares[relay].atom},
            )
            payload = _deliver(transcript, 2 * n + i, dispatch, directory, interceptor)
            member_keys[relay] = int.from_bytes(payload, "big") ^ shares[relay].material
    except ProtocolError as e:
        logger.warning(f"{key_id} aborted: {e}")
        return transcript.fail(e)
    return _finish(transcript, directory, GroupKind.FR, selector, shares, member_keys)


def run_br_key_exchange(
    node: int,
    selectors: Sequence[int],
    directory: KeyDirectory,
    fr_keys: Optional[Mapping[int, GroupKey]] = None,
    interceptor: Optional[Interceptor] = None,
) -> ProtocolTranscript:
    """
    Establishes bR_key = XOR of the node's and every selector's share, every message sealed
    under the fR_key of the selector it travels to or from.
    """
    selectors = tuple(selectors)
    _check_members(node, selectors, "selector")
    transcript = ProtocolTranscript(kind=GroupKind.BR, owner=node, members=(node,) + selectors)
    if fr_keys is None:
        fr_keys = {s: directory.group_key(group_key_id(GroupKind.FR, s)) for s in selectors}
    channels: Dict[int, str] = {}
    for s in selectors:
        fr_key = fr_keys.get(s)
        if fr_key is None:
            return transcript.fail(MissingGroupKeyError(f"Node {node} has no fR key with selector {s}"))
        for holder in (node, s):
            if fr_key.key_id not in directory.party(holder).group_keys:
                return transcript.fail(MissingGroupKeyError(f"Node {holder} does not hold {fr_key.key_id}"))
        channels[s] = fr_key.key_id

    m = len(selectors)
    key_id = group_key_id(GroupKind.BR, node)
    owner = directory.party(node)
    shares: Dict[int, Share] = {node: owner.new_share()}
    member_keys: Dict[int, int] = {}
    try:
        for j, s in enumerate(selectors, start=1):
            setup = owner.seal_group(s, f"setup|{key_id}".encode(), j, channels[s])
            _deliver(transcript, j, setup, directory, interceptor)

        received: Dict[int, int] = {}
        for j, s in enumerate(selectors, start=1):
            party = directory.party(s)
            shares[s] = party.new_share()
            reply = party.seal_group(
                node, material_bytes(shares[s].material), m + j, channels[s], content=frozenset({shares[s].atom}),
            )
            received[s] = int.from_bytes(_deliver(transcript, m + j, reply, directory, interceptor), "big")

        member_keys[node] = combine_shares([shares[node].material, *received.values()])
        all_atoms = frozenset(s.atom for s in shares.values())
        completion_step = 2 * m + 1
        for s in selectors:
            partial = member_keys[node] ^ received[s]
            completion = owner.seal_group(
                s, material_bytes(partial), completion_step, channels[s], content=all_atoms - {shares[s].atom},
            )
            payload = _deliver(transcript, completion_step, completion, directory, interceptor)
            member_keys[s] = int.from_bytes(payload, "big") ^ shares[s].material
    except ProtocolError as e:
        logger.warning(f"{key_id} aborted: {e}")
        return transcript.fail(e)
    return _finish(transcript, directory, GroupKind.BR, node, shares, member_keys)


def establish_group_keys(
    nhlists: Mapping[int, Iterable[int]],
    selectors: Mapping[int, Iterable[int]],
    directory: KeyDirectory,
    interceptor: Optional[Interceptor] = None,
) -> List[ProtocolTranscript]:
    """
    Runs fR for every node with forwarders, then bR for every node with selectors.
    """
    transcripts: List[ProtocolTranscript] = []
    for selector in sorted(nhlists):
        relays = list(nhlists[selector])
        if relays:
            transcripts.append(run_fr_key_exchange(selector, relays, directory, interceptor))
    for node in sorted(selectors):
        group = sorted(selectors[node])
        if group:
            transcripts.append(run_br_key_exchange(node, group, directory, interceptor=interceptor))
    failed = [t for t in transcripts if not t.established]
    logger.info(f"Established {len(transcripts) - len(failed)} group keys, {len(failed)} failed")
    return transcripts
