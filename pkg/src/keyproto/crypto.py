"""
Symbolic sealing: key material stand-ins, tags and XOR share arithmetic.

No cipher is modelled. A seal names the keys it needs and carries a keyed blake2b tag.
"""
import hashlib
from functools import reduce
from typing import Iterable, Sequence, Union

import numpy as np

from ..common.rng import substream
from .domain import SHARE_BYTES, SealMode, Share

TAG_BYTES = 16


def key_material(key_id: int) -> bytes:
    """Deterministic stand-in for the secret behind a pool key id."""
    return hashlib.blake2b(f"pool-key:{key_id}".encode(), digest_size=32).digest()


def material_bytes(material: int) -> bytes:
    return material.to_bytes(SHARE_BYTES, "big")


def sealing_key(parts: Sequence[bytes]) -> bytes:
    return hashlib.blake2b(b"".join(parts), digest_size=32).digest()


def pairwise_sealing_key(required_keys: Iterable[int]) -> bytes:
    return sealing_key([key_material(k) for k in sorted(required_keys)])


def group_sealing_key(material: int) -> bytes:
    return sealing_key([b"group", material_bytes(material)])


def compute_tag(
    key: bytes, sender: int, receiver: int, counter: int, step: int, mode: SealMode, payload: bytes
) -> bytes:
    h = hashlib.blake2b(key=key, digest_size=TAG_BYTES)
    h.update(f"{sender}|{receiver}|{counter}|{step}|{mode.value}|".encode())
    h.update(payload)
    return h.digest()


def payload_digest(payload: bytes) -> str:
    return hashlib.blake2b(payload, digest_size=8).hexdigest()


def share_stream(seed: int, node: int, counter: int) -> np.random.Generator:
    return substream(seed, "share", node, counter)


def generate_share(node: int, rng: np.random.Generator, counter: int = 0) -> Share:
    """
    Draws a 128-bit share from the given stream.
    """
    return Share(owner=node, material=int.from_bytes(rng.bytes(SHARE_BYTES), "big"), counter=counter)


def combine_shares(shares: Sequence[Union[Share, int]]) -> int:
    """
    XOR fold of share materials.
    """
    if not shares:
        raise ValueError("combine_shares needs at least one share")
    return reduce(lambda acc, s: acc ^ (s.material if isinstance(s, Share) else int(s)), shares, 0)
