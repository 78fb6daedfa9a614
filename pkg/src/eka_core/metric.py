"""
Expected Key Average formulas.

All functions are pure. Lists are in priority order (entry 0 = most preferred).
"""
import math
from typing import Sequence, Tuple

from ..common.exceptions import NoForwardersError
from .domain import ForwardingWeights

# Value printed for the worked three-forwarder example; exact evaluation gives 32.0.
WORKED_EXAMPLE_STATED_LAST_HOP = 54.0
WORKED_EXAMPLE_KEYS = (30, 27, 22)
WORKED_EXAMPLE_F = 0.5


def _check_failures(fs: Sequence[float]) -> None:
    if not fs:
        raise NoForwardersError("No forwarders: failure list is empty")
    for f in fs:
        if not 0.0 <= f < 1.0:
            raise ValueError(f"Failure probability must lie in [0, 1), got {f}")


def total_failure_and_trials(failures: Sequence[float]) -> Tuple[float, float, float]:
    """
    Returns (F, R, trials): F = product of failures, R = 1 - F, trials = 1 / R.
    """
    _check_failures(failures)
    F = math.prod(failures)
    R = 1.0 - F
    return F, R, 1.0 / R


def forwarding_weights(n: int) -> ForwardingWeights:
    """
    Priority forwarding probabilities: weight_i = 2^(n-i) / (2^n - 1), i = 1..n.
    """
    if n < 1:
        raise ValueError(f"Forwarder count must be >= 1, got {n}")
    denominator = float(2 ** n - 1)
    return ForwardingWeights(n=n, weights=tuple(2 ** (n - i) / denominator for i in range(1, n + 1)))


def _check_pair(a: Sequence, fs: Sequence[float]) -> None:
    _check_failures(fs)
    if len(a) != len(fs):
        raise ValueError(f"Length mismatch: {len(a)} values for {len(fs)} failure probabilities")


def last_hop_eka(ks: Sequence[float], fs: Sequence[float]) -> float:
    """
    Weighted key count over the forwarders divided by the probability that at least one receives.
    """
    _check_pair(ks, fs)
    n = len(ks)
    # Integer halving weights keep the numerator exact for integer key counts
    numerator = math.fsum(k * 2 ** (n - i) for i, k in enumerate(ks, start=1)) / (2 ** n - 1)
    return numerator / (1.0 - math.prod(fs))


def relay_coefficients(fs: Sequence[float]) -> Tuple[float, ...]:
    """
    Probability that forwarder i is the first to receive: (prod_{j<i} f_j) * (1 - f_i).
    """
    _check_failures(fs)
    coefficients = []
    preceding = 1.0
    for f in fs:
        coefficients.append(preceding * (1.0 - f))
        preceding *= f
    return tuple(coefficients)


def relay_eak(neighbor_eaks: Sequence[float], fs: Sequence[float]) -> Tuple[float, float]:
    """
    Returns (expected, conditioned): the first-receiver expectation of downstream EAK and the same value
    conditioned on at least one forwarder receiving.
    """
    _check_pair(neighbor_eaks, fs)
    expected = math.fsum(c * e for c, e in zip(relay_coefficients(fs), neighbor_eaks))
    return expected, expected / (1.0 - math.prod(fs))


def total_eak(last_hop: float, relay: float) -> float:
    if last_hop < 0 or relay < 0:
        raise ValueError(f"EAK components must be non-negative, got {last_hop}, {relay}")
    return last_hop + relay


def worked_example_check() -> dict:
    """Evaluates the three-forwarder example and reports it next to the stated value."""
    ks = list(WORKED_EXAMPLE_KEYS)
    computed = last_hop_eka(ks, [WORKED_EXAMPLE_F] * len(ks))
    return {
        "keys": ks,
        "f": WORKED_EXAMPLE_F,
        "weights": list(forwarding_weights(len(ks)).weights),
        "computed_last_hop": computed,
        "stated_last_hop": WORKED_EXAMPLE_STATED_LAST_HOP,
        "discrepancy": computed != WORKED_EXAMPLE_STATED_LAST_HOP,
    }
