from typing import Dict, List, Optional, Tuple
from pydantic import BaseModel, Field

class NHListEntry(BaseModel):
    node: int = Field(..., description="Relay id")
    priority: int = Field(..., ge=1, description="1 = most preferred")
    eak_snapshot: float = Field(..., ge=0.0, description="Relay EAK at selection time")

class EakEntry(BaseModel):
    """
    One row of the routing-state export.
    """
    node: int
    hop_level: Optional[int] = Field(None, description="Hop distance from the sink, None outside its component")
    eak: float = Field(..., ge=0.0)
    last_hop_component: float = Field(..., ge=0.0)
    relay_component: float = Field(..., ge=0.0)
    nhlist: List[NHListEntry] = Field(default_factory=list)
    relay_progression: List[float] = Field(default_factory=list)
    selectors: List[int] = Field(default_factory=list)

class RoutingExport(BaseModel):
    mode: str
    rounds: int
    sink: int
    is_fixpoint: bool
    unstable_nodes: List[int] = Field(default_factory=list, description="Nodes a recomputation would still change")
    monotonicity_violations: int
    reachable: List[int]
    unreachable: List[int]
    entries: List[EakEntry]
    worked_example: Dict = Field(default_factory=dict, description="Three-forwarder example, computed vs stated")
    prefix_audit: Dict = Field(default_factory=dict, description="Subset-exhaustive exploration results")

class HopExport(BaseModel):
    index: int
    direction: str
    sender: int
    receiver: int
    key_id: str
    payload_digest: str

class DeliveryStats(BaseModel):
    analytic: float
    empirical: float
    stderr: float
    trials: int
    per_hop_analytic: List[float]

class RouteExport(BaseModel):
    """
    Route set for one destination plus the sealed delivery trace.
    """
    destination: int
    policy: str
    layers: List[Tuple[List[int], List[int]]]
    expanded_paths: List[List[int]]
    bottlenecks: List[int]
    chosen_path: Optional[List[int]]
    truncated: bool
    max_hops: int
    hop_bound: int = Field(..., description="Node count minus one")
    query_hops: List[HopExport] = Field(default_factory=list)
    reply_path: List[int] = Field(default_factory=list)
    reply_hops: List[HopExport] = Field(default_factory=list)
    delivered: bool = True
    failure: Optional[str] = None
    failed_hop: Optional[int] = None
    query_delivery: Optional[DeliveryStats] = None
    reply_delivery: Optional[DeliveryStats] = None

class TopologyExport(BaseModel):
    records: int
    unaggregated_messages: int
    aggregated_messages: int
    unreachable: List[int]
