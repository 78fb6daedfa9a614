from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Set

from ..common.logging import setup_logger
from ..common.metrics import MetricsCollector
from .domain import Notification, RoutingState

logger = setup_logger(__name__)


@dataclass
class DispatchResult:
    notifications: List[Notification]
    messages: int
    state: RoutingState


def dispatch_nhlists(state: RoutingState, metrics: Optional[MetricsCollector] = None) -> DispatchResult:
    """
    Every node notifies each of its relays of the selection and its priority; receivers
    build their selector sets from the notices.
    """
    notifications: List[Notification] = []
    received: Dict[int, Set[int]] = {}
    for owner in sorted(state.nhlists):
        for priority, relay in enumerate(state.nhlists[owner].entries, start=1):
            notifications.append(Notification(selector=owner, relay=relay, priority=priority))
            received.setdefault(relay, set()).add(owner)
    if metrics is not None:
        metrics.record("nhlist_dispatch", len(notifications))
    logger.debug(f"Dispatched {len(notifications)} NHList notifications")
    selectors = {node: frozenset(s) for node, s in received.items()}
    return DispatchResult(
        notifications=notifications, messages=len(notifications), state=replace(state, selectors=selectors)
    )
