"""
Group key establishment (fR_key / bR_key) and adversary derivation analysis.
"""
from .domain import Envelope, GroupKey, GroupKind, ProtocolTranscript, SealMode, Share, group_key_id
from .crypto import combine_shares, generate_share, key_material, payload_digest, share_stream
from .party import KeyDirectory, Party
from .exchange import establish_group_keys, run_br_key_exchange, run_fr_key_exchange
from .adversary import (
    AdversaryKnowledge, ClosureResult, GF2Span, adversary_can_derive, brute_force_can_derive, compromise_report,
    derivation_closure, exposed_links,
)

__all__ = [
    "Envelope", "GroupKey", "GroupKind", "ProtocolTranscript", "SealMode", "Share", "group_key_id",
    "combine_shares", "generate_share", "key_material", "payload_digest", "share_stream",
    "KeyDirectory", "Party",
    "establish_group_keys", "run_br_key_exchange", "run_fr_key_exchange",
    "AdversaryKnowledge", "ClosureResult", "GF2Span", "adversary_can_derive", "brute_force_can_derive", "compromise_report",
    "derivation_closure", "exposed_links",
]
