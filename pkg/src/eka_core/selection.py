"""
Prefix selection of the forwarder list (Update_EAK).
"""
from typing import List, Mapping, Optional, Sequence, Tuple

from .domain import Candidate, EakRecord, NHList
from .metric import last_hop_eka, relay_eak, total_eak

LinkWeights = Mapping[int, Tuple[float, float]]


def sorted_candidates(
    neighbor_records: Sequence[EakRecord], links: LinkWeights, sink: Optional[int] = 0
) -> List[Candidate]:
    """
    The sink first when adjacent, then EAK descending with lower id first.

    Non-sink neighbours with EAK <= 0 cannot relay and are dropped.
    """
    candidates: List[Candidate] = []
    for record in neighbor_records:
        if record.node not in links:
            raise KeyError(f"No link weights for neighbour {record.node}")
        k, f = links[record.node]
        is_sink = record.node == sink
        if not is_sink and record.eak <= 0:
            continue
        candidates.append(Candidate(node=record.node, eak=0.0 if is_sink else record.eak, k=k, f=f, is_sink=is_sink))
    candidates.sort(key=lambda c: (not c.is_sink, -c.eak, c.node))
    return candidates


def evaluate_prefix(u: int, prefix: Sequence[Candidate]) -> EakRecord:
    """Full record (last hop, relay, total) for an ordered forwarder list."""
    if not prefix:
        return EakRecord.zero(u)
    fs = [c.f for c in prefix]
    last_hop = last_hop_eka([c.k for c in prefix], fs)
    _, relay = relay_eak([c.eak for c in prefix], fs)
    return EakRecord(node=u, eak=total_eak(last_hop, relay), last_hop_component=last_hop, relay_component=relay)


def relay_value(prefix: Sequence[Candidate]) -> float:
    if not prefix:
        return 0.0
    return relay_eak([c.eak for c in prefix], [c.f for c in prefix])[1]


def select_prefix(candidates: Sequence[Candidate]) -> Tuple[List[Candidate], List[float]]:
    """
    Admits candidates in order while each one's EAK strictly exceeds the accumulated relay value.

    The sink is admitted unconditionally. Stops at the first rejection, or once some admitted
    forwarder always receives (total failure 0). Returns the prefix and the relay value after
    every admission.
    """
    admitted: List[Candidate] = []
    progression: List[float] = []
    total_failure = 1.0
    current = 0.0
    for candidate in candidates:
        if admitted and total_failure == 0.0:
            break
        if not candidate.is_sink and not candidate.eak > current:
            break
        admitted.append(candidate)
        total_failure *= candidate.f
        current = relay_value(admitted)
        progression.append(current)
    return admitted, progression


def update_eak(
    u: int,
    neighbor_records: Sequence[EakRecord],
    links: LinkWeights,
    sink: Optional[int] = 0,
) -> Tuple[EakRecord, NHList]:
    """
    Recomputes a node's EAK and forwarder list from its candidates' current records.

    links maps each neighbour id to the (shared key count, failure probability) of the link.
    No admissible neighbour yields EAK 0 and an empty list.
    """
    prefix, progression = select_prefix(sorted_candidates(neighbor_records, links, sink))
    record = evaluate_prefix(u, prefix)
    nhlist = NHList(
        owner=u,
        entries=tuple(c.node for c in prefix),
        eak_snapshot=tuple(c.eak for c in prefix),
        relay_progression=tuple(progression),
    )
    return record, nhlist
