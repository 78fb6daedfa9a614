"""
Expected Key Average metric and forwarder-list selection.
"""
from .domain import Candidate, EakRecord, ForwardingWeights, NHList
from .metric import (
    WORKED_EXAMPLE_STATED_LAST_HOP, forwarding_weights, last_hop_eka, relay_coefficients, relay_eak,
    total_eak, total_failure_and_trials, worked_example_check,
)
from .selection import evaluate_prefix, relay_value, select_prefix, sorted_candidates, update_eak
from .oracle import SubsetReport, best_prefix_oracle, best_subset_oracle, collect_counterexamples

__all__ = [
    "Candidate", "EakRecord", "ForwardingWeights", "NHList",
    "WORKED_EXAMPLE_STATED_LAST_HOP", "forwarding_weights", "last_hop_eka", "relay_coefficients",
    "relay_eak", "total_eak", "total_failure_and_trials", "worked_example_check",
    "evaluate_prefix", "relay_value", "select_prefix", "sorted_candidates", "update_eak",
    "SubsetReport", "best_prefix_oracle", "best_subset_oracle", "collect_counterexamples",
]
