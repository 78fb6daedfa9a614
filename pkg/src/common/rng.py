"""
Deterministic random streams.

Every draw in the repository comes from a labelled substream so that results
depend only on (seed, labels), never on evaluation order.
"""
import hashlib
from typing import Union

import numpy as np

Label = Union[int, str]


def _label_to_int(label: Label) -> int:
    if isinstance(label, (int, np.integer)):
        if label < 0:
            raise ValueError(f"Substream labels must be non-negative, got {label}")
        return int(label)
    # Python's str hash is salted per process
    return int.from_bytes(hashlib.blake2b(label.encode("utf-8"), digest_size=4).digest(), "big")


def substream(seed: int, *labels: Label) -> np.random.Generator:
    """
    Returns a Philox (counter-based) generator keyed by seed and labels.
    """
    if seed < 0:
        raise ValueError(f"Seed must be non-negative, got {seed}")
    sequence = np.random.SeedSequence(int(seed), spawn_key=tuple(_label_to_int(l) for l in labels))
    return np.random.Generator(np.random.Philox(sequence))
