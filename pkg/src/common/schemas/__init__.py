from .graph import GraphNode, GraphEdge, GraphTopology
from .routing import (
    DeliveryStats, EakEntry, HopExport, NHListEntry, RouteExport, RoutingExport, TopologyExport,
)
from .scenario import (
    AdversaryConfig, AreaConfig, FailureModelConfig, FixtureLink, FixtureNode, RoutingConfig,
    ScenarioConfig, SimulationConfig, TopologyConfig,
)
from .transcript import EnvelopeRecord, TranscriptRecord

__all__ = [
    "GraphNode",
    "GraphEdge",
    "GraphTopology",
    "DeliveryStats",
    "EakEntry",
    "HopExport",
    "NHListEntry",
    "RouteExport",
    "RoutingExport",
    "TopologyExport",
    "AdversaryConfig",
    "AreaConfig",
    "FailureModelConfig",
    "FixtureLink",
    "FixtureNode",
    "RoutingConfig",
    "ScenarioConfig",
    "SimulationConfig",
    "TopologyConfig",
    "EnvelopeRecord",
    "TranscriptRecord",
]
