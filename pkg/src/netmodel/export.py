"""
Canonical JSON and DOT export of a NetworkGraph.
"""
import hashlib
import json
from typing import Any, Dict

from ..common.schemas.graph import GraphEdge, GraphNode, GraphTopology
from .domain import NetworkGraph


def to_schema(graph: NetworkGraph) -> GraphTopology:
    return GraphTopology(
        area_w=graph.area[0],
        area_h=graph.area[1],
        sink=graph.sink,
        nodes=[
            GraphNode(
                node_id=n.id,
                tier=n.tier.value,
                x=n.position[0],
                y=n.position[1],
                range_m=n.range_m,
                ring=n.ring.sorted(),
            )
            for n in graph.nodes
        ],
        edges=[
            GraphEdge(
                source_node=l.u,
                target_node=l.v,
                shared_keys=sorted(l.shared_keys),
                k=l.k,
                f=l.f,
                distance_m=l.distance_m,
            )
            for l in graph.links
        ],
    )


def to_dict(graph: NetworkGraph) -> Dict[str, Any]:
    return to_schema(graph).model_dump()


def to_json(graph: NetworkGraph) -> str:
    # Field order comes from the schema; keys inside are never re-sorted.
    return json.dumps(to_dict(graph), separators=(",", ":"))


def graph_hash(graph: NetworkGraph) -> str:
    return hashlib.sha256(to_json(graph).encode("utf-8")).hexdigest()


def to_dot(graph: NetworkGraph) -> str:
    lines = ["graph wsn {"]
    for n in graph.nodes:
        shape = "doublecircle" if n.id == graph.sink else ("box" if n.tier.value == "H" else "circle")
        lines.append(f'  {n.id} [shape={shape}, pos="{n.position[0]:.2f},{n.position[1]:.2f}!"];')
    for l in graph.links:
        lines.append(f'  {l.u} -- {l.v} [label="k={l.k} f={l.f:.3f}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
