"""
Distributed EAK computation towards the sink.

Every neighbour in the sink's component is a forwarder candidate; update_eak itself drops
neighbours whose EAK is still 0. Selections may therefore point away from the sink and
the forwarding relation may contain cycles.
"""
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from ..common.exceptions import ConfigurationError, ConvergenceError
from ..common.logging import setup_logger, log_execution_time
from ..eka_core.domain import EakRecord, NHList
from ..eka_core.selection import LinkWeights, update_eak
from ..netmodel.domain import NetworkGraph
from .domain import RoutingState

logger = setup_logger(__name__)

MODES = ("greedy_finalize", "iterative_relax")


def candidate_inputs(
    u: int, graph: NetworkGraph, table: Mapping[int, EakRecord]
) -> Tuple[List[EakRecord], LinkWeights]:
    """Current records and (k, f) link weights of every neighbour of u."""
    records: List[EakRecord] = []
    links: Dict[int, Tuple[float, float]] = {}
    for v in graph.neighbors(u):
        link = graph.link(u, v)
        records.append(table[v])
        links[v] = (link.k, link.f)
    return records, links


def _update(u: int, graph: NetworkGraph, table: Mapping[int, EakRecord]) -> Tuple[EakRecord, NHList]:
    records, links = candidate_inputs(u, graph, table)
    return update_eak(u, records, links, sink=graph.sink)


def _count_violations(nh: NHList) -> int:
    previous, count = 0.0, 0
    for value in nh.relay_progression:
        if value < previous:
            count += 1
        previous = value
    return count


def _greedy_finalize(graph: NetworkGraph, scope: FrozenSet[int]) -> RoutingState:
    sink = graph.sink
    table = {n: EakRecord.zero(n) for n in graph.node_ids}
    nhlists = {n: NHList.empty(n) for n in graph.node_ids}
    pending = set(scope) - {sink}
    violations = 0

    def relax(v: int) -> None:
        # All neighbours of v read the table as it was before this relaxation
        nonlocal violations
        snapshot = dict(table)
        for w in sorted(w for w in graph.neighbors(v) if w in pending):
            table[w], nhlists[w] = _update(w, graph, snapshot)
            violations += _count_violations(nhlists[w])

    relax(sink)
    steps = 0
    while pending:
        chosen = max(pending, key=lambda v: (table[v].eak, -v))
        pending.discard(chosen)
        relax(chosen)
        steps += 1
    return RoutingState(
        eak_table=table, nhlists=nhlists, sink=sink, round=steps, mode="greedy_finalize",
        admission_violations=violations,
    )


def _iterative_relax(graph: NetworkGraph, scope: FrozenSet[int], epsilon: float, max_rounds: int) -> RoutingState:
    sink = graph.sink
    table = {n: EakRecord.zero(n) for n in graph.node_ids}
    nhlists = {n: NHList.empty(n) for n in graph.node_ids}
    active = sorted(scope - {sink})
    violations = 0
    changed: List[int] = []
    for round_no in range(1, max_rounds + 1):
        # Every node reads only the previous round's table
        updates = {u: _update(u, graph, table) for u in active}
        changed = [
            u for u, (record, nh) in updates.items()
            if abs(record.eak - table[u].eak) > epsilon or nh.entries != nhlists[u].entries
        ]
        for u, (record, nh) in updates.items():
            table[u], nhlists[u] = record, nh
            violations += _count_violations(nh)
        if not changed:
            return RoutingState(
                eak_table=table, nhlists=nhlists, sink=sink, round=round_no, mode="iterative_relax",
                admission_violations=violations,
            )
    logger.warning(f"iterative_relax hit its cap of {max_rounds} rounds; still changing: {changed}")
    raise ConvergenceError(
        f"No convergence after {max_rounds} rounds; {len(changed)} nodes still changing", oscillating=changed
    )


@log_execution_time(logger, stage="eak fixpoint")
def compute_eak_to_sink(
    graph: NetworkGraph,
    mode: str = "greedy_finalize",
    epsilon: float = 1e-9,
    max_rounds: Optional[int] = None,
) -> RoutingState:
    """
    Computes every node's EAK and forwarder list. Nodes outside the sink's component keep
    EAK 0 and an empty list.

    greedy_finalize never revisits a finalised node, so its table need not satisfy
    is_fixpoint. iterative_relax raises ConvergenceError with the nodes still changing when
    max_rounds (default |V|) binds.
    """
    if mode not in MODES:
        raise ConfigurationError(f"Unknown fixpoint mode '{mode}', expected one of {MODES}")
    if graph.sink not in graph.node_ids:
        raise ConfigurationError("Graph has no sink")
    scope = graph.sink_component()
    if mode == "greedy_finalize":
        state = _greedy_finalize(graph, scope)
    else:
        state = _iterative_relax(graph, scope, epsilon, max_rounds or len(graph.nodes))
    logger.info(
        f"{mode}: {len(state.reachable())} reachable, {len(state.unreachable())} unreachable after {state.round} rounds"
    )
    return state


def unstable_nodes(state: RoutingState, graph: NetworkGraph, epsilon: float = 1e-9) -> List[int]:
    """Nodes whose EAK or forwarder list would change if recomputed from the final table."""
    unstable = []
    for u in sorted(graph.sink_component() - {graph.sink}):
        record, nh = _update(u, graph, state.eak_table)
        if abs(record.eak - state.eak(u)) > epsilon or nh.entries != state.nhlist(u).entries:
            unstable.append(u)
    return unstable


def is_fixpoint(state: RoutingState, graph: NetworkGraph, epsilon: float = 1e-9) -> bool:
    """Recomputing every node from the final table changes nothing."""
    return not unstable_nodes(state, graph, epsilon)
