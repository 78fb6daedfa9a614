from typing import Dict, List, Literal, Optional, Tuple
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class StrictModel(BaseModel):
    """Base for configuration models: unknown fields are rejected."""
    model_config = ConfigDict(extra="forbid")


class AreaConfig(StrictModel):
    """
    Deployment rectangle in meters.
    """
    w: float = Field(100.0, gt=0, description="Width in meters")
    h: float = Field(100.0, gt=0, description="Height in meters")


class FailureModelConfig(StrictModel):
    """
    Source of the per-link failure probability f(u,v).
    """
    kind: Literal["constant", "uniform", "distance"] = Field("constant", description="Failure model name")
    params: Dict[str, float] = Field(default_factory=lambda: {"f": 0.5}, description="Model parameters")


class FixtureNode(StrictModel):
    id: int = Field(..., ge=0)
    tier: Literal["L", "H", "Sink"] = "L"
    position: Tuple[float, float] = (0.0, 0.0)


class FixtureLink(StrictModel):
    u: int = Field(..., ge=0)
    v: int = Field(..., ge=0)
    k: int = Field(..., ge=1, description="Shared key count")
    f: float = Field(..., ge=0.0, lt=1.0, description="Failure probability")

    @model_validator(mode="after")
    def check_endpoints(self) -> "FixtureLink":
        if self.u == self.v:
            raise ValueError(f"Self link on node {self.u}")
        return self


class TopologyConfig(StrictModel):
    """
    Explicit topology used by the fixture library instead of a random deployment.
    """
    nodes: List[FixtureNode]
    links: List[FixtureLink]

    @model_validator(mode="after")
    def check_topology(self) -> "TopologyConfig":
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise ValueError("Fixture node ids must be unique")
        if sum(1 for n in self.nodes if n.tier == "Sink") != 1:
            raise ValueError("Fixture must contain exactly one Sink node")
        known = set(ids)
        pairs = set()
        for link in self.links:
            if link.u not in known or link.v not in known:
                raise ValueError(f"Link ({link.u}, {link.v}) references an unknown node")
            pair = (min(link.u, link.v), max(link.u, link.v))
            if pair in pairs:
                raise ValueError(f"Duplicate link {pair}")
            pairs.add(pair)
        return self


class RoutingConfig(StrictModel):
    mode: Literal["greedy_finalize", "iterative_relax"] = "greedy_finalize"
    epsilon: float = Field(1e-9, gt=0)
    policy: Literal["max_min_keys", "min_hop", "all_paths"] = "max_min_keys"
    path_cap: int = Field(128, ge=1)


class SimulationConfig(StrictModel):
    trials: int = Field(100_000, ge=1, description="Monte Carlo trials per table cell")
    n_values: List[int] = Field(default_factory=lambda: [1, 2, 3, 5])
    f_values: List[float] = Field(default_factory=lambda: [0.1, 0.5, 0.9])
    route_trials: int = Field(10_000, ge=1)
    workers: int = Field(1, ge=1)

    @field_validator("n_values")
    @classmethod
    def validate_n(cls, v: List[int]) -> List[int]:
        if not v or any(n < 1 for n in v):
            raise ValueError("n_values must be a non-empty list of positive counts")
        return v

    @field_validator("f_values")
    @classmethod
    def validate_f(cls, v: List[float]) -> List[float]:
        if not v or any(not 0.0 <= f < 1.0 for f in v):
            raise ValueError("f_values must lie in [0, 1)")
        return v


class AdversaryConfig(StrictModel):
    compromised_sets: List[List[int]] = Field(default_factory=list)


class ScenarioConfig(StrictModel):
    """
    Complete scenario: deployment, keying, routing, simulation and reporting.
    """
    node_count: int = Field(100, ge=2, description="Total nodes including the sink")
    h_fraction: float = Field(0.15, ge=0.0, le=1.0, description="Share of H-sensors")
    area: AreaConfig = Field(default_factory=AreaConfig)
    range_l: float = Field(25.0, gt=0, description="L-sensor range in meters")
    range_h: float = Field(40.0, gt=0, description="H-sensor and sink range in meters")
    pool_size: int = Field(1000, ge=1)
    k1: int = Field(30, ge=1)
    k2: int = Field(60, ge=1)
    failure_model: FailureModelConfig = Field(default_factory=FailureModelConfig)
    sink_position: Optional[Tuple[float, float]] = None
    seed: int = Field(1, ge=0, lt=2**64)
    topology: Optional[TopologyConfig] = None
    routing: RoutingConfig = Field(default_factory=RoutingConfig)
    simulation: SimulationConfig = Field(default_factory=SimulationConfig)
    adversary: AdversaryConfig = Field(default_factory=AdversaryConfig)
    destination: Optional[int] = Field(None, ge=0)
    output_dir: str = "reports/default"

    @model_validator(mode="after")
    def check_key_sizes(self) -> "ScenarioConfig":
        if not self.k1 <= self.k2 <= self.pool_size:
            raise ValueError(
                f"Key ring sizes must satisfy k1 <= k2 <= pool_size, got {self.k1}, {self.k2}, {self.pool_size}"
            )
        return self
