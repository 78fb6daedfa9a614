"""
Exhaustive oracles for forwarder selection.
"""
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from ..common.logging import setup_logger
from .domain import EakRecord
from .selection import LinkWeights, evaluate_prefix, relay_value, sorted_candidates

logger = setup_logger(__name__)

MAX_PREFIX_CANDIDATES = 20
MAX_SUBSET_CANDIDATES = 8


def best_prefix_oracle(
    u: int, neighbor_records: Sequence[EakRecord], links: LinkWeights, sink: Optional[int] = 0
) -> Tuple[int, float]:
    """
    Evaluates every prefix of the sorted candidate list and returns (length, EAK) of the best.

    Prefixes are ranked by the conditioned relay value of the list, not by the full EAK.
    The relay value is what the admission rule in select_prefix maximises, and the
    optimality of the admitted prefix holds for that quantity; the last-hop part of EAK
    is a key-weighted average that may fall as candidates are added. Ties go to the
    shorter prefix, so the returned length equals the admitted one.
    When the sink is adjacent only prefixes containing it are eligible.
    """
    candidates = sorted_candidates(neighbor_records, links, sink)
    if len(candidates) > MAX_PREFIX_CANDIDATES:
        raise ValueError(f"Oracle supports at most {MAX_PREFIX_CANDIDATES} candidates, got {len(candidates)}")
    shortest = 1 if candidates and candidates[0].is_sink else 0
    best_len, best_value = shortest, relay_value(candidates[:shortest])
    for length in range(shortest + 1, len(candidates) + 1):
        value = relay_value(candidates[:length])
        if value > best_value:
            best_len, best_value = length, value
    return best_len, evaluate_prefix(u, candidates[:best_len]).eak


@dataclass(frozen=True)
class SubsetReport:
    """Outcome of the subset-exhaustive search against the best prefix."""
    node: int
    best_prefix: Tuple[int, ...]
    best_prefix_value: float
    best_subset: Tuple[int, ...]
    best_subset_value: float

    @property
    def counterexample(self) -> bool:
        return self.best_subset_value > self.best_prefix_value + 1e-12


def best_subset_oracle(
    u: int, neighbor_records: Sequence[EakRecord], links: LinkWeights, sink: Optional[int] = 0
) -> SubsetReport:
    """
    Exploratory check: does any subset (kept in priority order) beat the best prefix?
    """
    candidates = sorted_candidates(neighbor_records, links, sink)
    if len(candidates) > MAX_SUBSET_CANDIDATES:
        raise ValueError(f"Subset oracle supports at most {MAX_SUBSET_CANDIDATES} candidates")
    prefix_len, _ = best_prefix_oracle(u, neighbor_records, links, sink)
    prefix = candidates[:prefix_len]
    prefix_value = relay_value(prefix)

    must_include_sink = bool(candidates) and candidates[0].is_sink
    best_subset, best_value = prefix, prefix_value
    for size in range(1, len(candidates) + 1):
        for subset in combinations(candidates, size):
            if must_include_sink and not subset[0].is_sink:
                continue
            value = relay_value(subset)
            if value > best_value:
                best_subset, best_value = list(subset), value

    report = SubsetReport(
        node=u,
        best_prefix=tuple(c.node for c in prefix),
        best_prefix_value=prefix_value,
        best_subset=tuple(c.node for c in best_subset),
        best_subset_value=best_value,
    )
    if report.counterexample:
        logger.warning(
            f"Node {u}: subset {report.best_subset} ({best_value:.6f}) beats prefix "
            f"{report.best_prefix} ({prefix_value:.6f})"
        )
    return report


def collect_counterexamples(reports: Sequence[SubsetReport]) -> List[SubsetReport]:
    return [r for r in reports if r.counterexample]
