"""
Monte Carlo validation of expected-transmission formulas and route delivery.
"""
from .domain import RouteDeliveryResult, Semantics, TrialConfig, TrialResult
from .anypath import analytic_rounds, draw_rounds, simulate_anypath_rounds
from .delivery import simulate_route_delivery
from .table import broadcast_vs_pairwise, expected_transmission_table
from .repository import CSVResultRepository

__all__ = [
    "RouteDeliveryResult", "Semantics", "TrialConfig", "TrialResult",
    "analytic_rounds", "draw_rounds", "simulate_anypath_rounds",
    "simulate_route_delivery",
    "broadcast_vs_pairwise", "expected_transmission_table",
    "CSVResultRepository",
]
