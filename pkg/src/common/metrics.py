from collections import Counter
from dataclasses import dataclass
from typing import Dict, List


@dataclass
class MessageMetrics:
    """Message counts per protocol phase"""
    nhlist_dispatch: int
    topology_unaggregated: int
    topology_aggregated: int
    protocol_envelopes: int
    query_hops: int
    reply_hops: int

    def to_dict(self) -> Dict:
        return {
            'nhlist_dispatch': self.nhlist_dispatch,
            'topology_unaggregated': self.topology_unaggregated,
            'topology_aggregated': self.topology_aggregated,
            'protocol_envelopes': self.protocol_envelopes,
            'query_hops': self.query_hops,
            'reply_hops': self.reply_hops,
        }

    def to_rows(self) -> List[Dict]:
        return [{'phase': phase, 'messages': count} for phase, count in self.to_dict().items()]


class MetricsCollector:
    """Collects message counts emitted by the routing and key phases"""

    PHASES = (
        'nhlist_dispatch',
        'topology_unaggregated',
        'topology_aggregated',
        'protocol_envelopes',
        'query_hops',
        'reply_hops',
    )

    def __init__(self):
        self.counts: Counter = Counter()

    def record(self, phase: str, count: int = 1):
        if phase not in self.PHASES:
            raise KeyError(f"Unknown message phase: {phase}")
        if count < 0:
            raise ValueError(f"Message count must be non-negative, got {count}")
        self.counts[phase] += count

    def get_metrics(self) -> MessageMetrics:
        return MessageMetrics(**{phase: self.counts.get(phase, 0) for phase in self.PHASES})
