from typing import List, Literal
from pydantic import BaseModel, Field

class GraphNode(BaseModel):
    """
    A deployed sensor (or the sink) with its pre-distributed key ring.
    """
    node_id: int = Field(..., ge=0, description="Unique node identifier")
    tier: Literal['L', 'H', 'Sink'] = Field(..., description="Capability tier")
    x: float = Field(..., description="X coordinate in meters")
    y: float = Field(..., description="Y coordinate in meters")
    range_m: float = Field(..., gt=0, description="Transmission radius in meters")
    ring: List[int] = Field(default_factory=list, description="Sorted key identifiers")

class GraphEdge(BaseModel):
    """
    A secure link: endpoints within range that share at least one key.
    """
    source_node: int = Field(..., description="Lower endpoint id")
    target_node: int = Field(..., description="Higher endpoint id")
    shared_keys: List[int] = Field(..., description="Sorted shared key identifiers")
    k: int = Field(..., ge=1, description="Number of shared keys")
    f: float = Field(..., ge=0.0, lt=1.0, description="Failure probability")
    distance_m: float = Field(..., ge=0.0, description="Euclidean distance in meters")

class GraphTopology(BaseModel):
    """
    Represents the full deployment graph.
    """
    area_w: float
    area_h: float
    sink: int
    nodes: List[GraphNode]
    edges: List[GraphEdge]
