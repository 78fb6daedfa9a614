"""
End-to-end delivery over a multi-hop route with geometric retries per hop.
"""
import math
from typing import Dict, List, Sequence

import numpy as np

from ..common.exceptions import UndeliverableError
from ..common.rng import substream
from .anypath import analytic_rounds, chunk_sizes, draw_rounds, histogram_of, merge_histograms, summarize, CHUNK_SIZE
from .domain import RouteDeliveryResult, Semantics


def simulate_route_delivery(
    hops: Sequence[Sequence[float]],
    trials: int,
    seed: int,
    semantics: Semantics = Semantics.BROADCAST,
    chunk_size: int = CHUNK_SIZE,
) -> RouteDeliveryResult:
    """
    hops lists the forwarder failure probabilities of every hop. The end-to-end count of a
    trial is the sum of its per-hop rounds; its expectation is the sum of the hop expectations.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    groups = [tuple(float(f) for f in hop) for hop in hops]
    for index, group in enumerate(groups):
        if not group:
            raise UndeliverableError(f"Hop {index} has no forwarders", hop_index=index)
        if any(not 0.0 <= f <= 1.0 for f in group):
            raise ValueError(f"Hop {index}: failure probabilities must lie in [0, 1]")
        blocked = math.prod(group) == 1.0 if Semantics(semantics) == Semantics.BROADCAST else any(f == 1.0 for f in group)
        if blocked:
            raise UndeliverableError(f"Hop {index} can never succeed", hop_index=index)

    per_hop: List[List[Dict[int, int]]] = [[] for _ in groups]
    end_to_end: List[Dict[int, int]] = []
    for chunk, size in enumerate(chunk_sizes(trials, chunk_size)):
        total = np.zeros(size, dtype=np.int64)
        for index, group in enumerate(groups):
            rounds = draw_rounds(group, semantics, size, substream(seed, "route", index, chunk))
            per_hop[index].append(histogram_of(rounds))
            total += rounds
        end_to_end.append(histogram_of(total))

    hop_results = [
        summarize(merge_histograms(per_hop[i]), trials, analytic_rounds(group, semantics))
        for i, group in enumerate(groups)
    ]
    analytic_total = math.fsum(r.analytic for r in hop_results)
    return RouteDeliveryResult(
        hops=hop_results,
        end_to_end=summarize(merge_histograms(end_to_end), trials, analytic_total),
        failures=groups,
    )
