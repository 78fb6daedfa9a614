"""
Deployment generation, key pre-distribution and link construction.
"""
import math
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from ..common.exceptions import ConfigurationError
from ..common.logging import setup_logger, log_execution_time
from ..common.rng import substream
from ..common.schemas.scenario import ScenarioConfig, TopologyConfig
from .domain import KeyPool, KeyRing, LinkInfo, NetworkGraph, NodeSpec, Tier
from .failure_models import FailureModel, create_failure_model

logger = setup_logger(__name__)

SINK_ID = 0


def h_tier_count(node_count: int, h_fraction: float) -> int:
    """Round half up, leaving at least the sink out of the H-tier."""
    return min(int(math.floor(h_fraction * node_count + 0.5)), node_count - 1)


@log_execution_time(logger, stage="deployment")
def generate_deployment(config: ScenarioConfig, seed: Optional[int] = None) -> NetworkGraph:
    """
    Places the sink and node_count - 1 sensors uniformly over the area.

    Ids are sequential: sink 0, then the H-tier, then the L-tier. Rings and links are left empty.
    """
    seed = config.seed if seed is None else seed
    if config.node_count < 2:
        raise ConfigurationError(f"node_count must be >= 2, got {config.node_count}")
    if config.area.w <= 0 or config.area.h <= 0:
        raise ConfigurationError(f"Area must be positive, got {config.area.w}x{config.area.h}")
    if config.range_l <= 0 or config.range_h <= 0:
        raise ConfigurationError("Transmission ranges must be positive")
    if not 0.0 <= config.h_fraction <= 1.0:
        raise ConfigurationError(f"h_fraction must lie in [0, 1], got {config.h_fraction}")

    w, h = config.area.w, config.area.h
    sink_pos = config.sink_position if config.sink_position is not None else (w / 2.0, h / 2.0)
    h_count = h_tier_count(config.node_count, config.h_fraction)

    rng = substream(seed, "positions")
    coords = rng.uniform(low=(0.0, 0.0), high=(w, h), size=(config.node_count - 1, 2))

    nodes: List[NodeSpec] = [
        NodeSpec(id=SINK_ID, tier=Tier.SINK, position=(float(sink_pos[0]), float(sink_pos[1])), range_m=config.range_h)
    ]
    for i, (x, y) in enumerate(coords, start=1):
        is_h = i <= h_count
        nodes.append(NodeSpec(
            id=i,
            tier=Tier.H if is_h else Tier.L,
            position=(float(x), float(y)),
            range_m=config.range_h if is_h else config.range_l,
        ))
    logger.debug(f"Deployed {config.node_count} nodes ({h_count} H-tier) over {w}x{h} m")
    return NetworkGraph(nodes=tuple(nodes), area=(w, h))


def assign_key_rings(graph: NetworkGraph, pool: KeyPool, k1: int, k2: int, seed: int) -> NetworkGraph:
    """
    Draws every ring as a uniform k-subset of the pool; H-tier nodes and the sink get k2 keys.
    """
    if not k1 <= k2 <= pool.size:
        raise ConfigurationError(f"Key ring sizes must satisfy k1 <= k2 <= pool size, got {k1}, {k2}, {pool.size}")
    if k1 < 1:
        raise ConfigurationError(f"k1 must be >= 1, got {k1}")
    rings: Dict[int, FrozenSet[int]] = {}
    for node in graph.nodes:
        size = k1 if node.tier == Tier.L else k2
        rng = substream(seed, "rings", node.id)
        rings[node.id] = frozenset(int(k) for k in rng.choice(pool.size, size=size, replace=False))
    return graph.with_rings(rings)


def shared_keys(ring_a: KeyRing, ring_b: KeyRing) -> FrozenSet[int]:
    return ring_a.keys & ring_b.keys


def build_links(graph: NetworkGraph, failure_model: FailureModel) -> NetworkGraph:
    """
    A link exists iff the nodes are within the shorter of their ranges and share at least one key.
    """
    links: List[LinkInfo] = []
    for a, b in combinations(graph.nodes, 2):
        distance = a.distance_to(b)
        if distance > min(a.range_m, b.range_m):
            continue
        common = shared_keys(a.ring, b.ring)
        if not common:
            continue
        f = float(failure_model.failure(a, b, distance))
        if not 0.0 <= f < 1.0:
            raise ConfigurationError(f"Failure model produced f={f} for link ({a.id}, {b.id}); must lie in [0, 1)")
        links.append(LinkInfo(u=a.id, v=b.id, shared_keys=common, f=f, distance_m=distance))
    logger.debug(f"Built {len(links)} secure links")
    return graph.with_links(links)


def graph_from_topology(
    topology: TopologyConfig,
    area: Tuple[float, float] = (100.0, 100.0),
    range_l: float = 25.0,
    range_h: float = 40.0,
) -> NetworkGraph:
    """
    Builds a graph from an explicit fixture.

    Each link receives k fresh key ids; a node's ring is the union of its links' ids,
    so every fixture link shares exactly k keys. Positions and ranges are informational.
    """
    tiers = {"L": Tier.L, "H": Tier.H, "Sink": Tier.SINK}
    rings: Dict[int, set] = {n.id: set() for n in topology.nodes}
    links: List[LinkInfo] = []
    next_key = 0
    for fl in topology.links:
        keys = frozenset(range(next_key, next_key + fl.k))
        next_key += fl.k
        rings[fl.u] |= keys
        rings[fl.v] |= keys
        links.append(LinkInfo(u=fl.u, v=fl.v, shared_keys=keys, f=fl.f))

    nodes = tuple(
        NodeSpec(
            id=n.id,
            tier=tiers[n.tier],
            position=(float(n.position[0]), float(n.position[1])),
            range_m=range_l if n.tier == "L" else range_h,
            ring=KeyRing(frozenset(rings[n.id])),
        )
        for n in topology.nodes
    )
    return NetworkGraph(nodes=nodes, links=tuple(links), area=area)


def build_network(config: ScenarioConfig, seed: Optional[int] = None) -> NetworkGraph:
    """
    Full netmodel pipeline: fixture topology when configured, otherwise deploy, key and link.
    """
    seed = config.seed if seed is None else seed
    area = (config.area.w, config.area.h)
    if config.topology is not None:
        return graph_from_topology(config.topology, area, config.range_l, config.range_h)
    graph = generate_deployment(config, seed)
    graph = assign_key_rings(graph, KeyPool(config.pool_size), config.k1, config.k2, seed)
    model = create_failure_model(config.failure_model.kind, config.failure_model.params, seed)
    return build_links(graph, model)


def key_share_probability(pool_size: int, ka: int, kb: int) -> float:
    """
    Probability that random rings of sizes ka and kb share at least one key.
    """
    if pool_size < 1 or ka < 0 or kb < 0 or ka > pool_size or kb > pool_size:
        raise ConfigurationError(f"Invalid ring sizes ({ka}, {kb}) for pool {pool_size}")
    return 1.0 - math.comb(pool_size - ka, kb) / math.comb(pool_size, kb)


def expected_shared_keys(pool_size: int, ka: int, kb: int) -> float:
    """Hypergeometric mean overlap."""
    return ka * kb / pool_size


def in_range_pairs(graph: NetworkGraph) -> Iterable[Tuple[NodeSpec, NodeSpec]]:
    for a, b in combinations(graph.nodes, 2):
        if a.distance_to(b) <= min(a.range_m, b.range_m):
            yield a, b
