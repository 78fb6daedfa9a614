"""
Conversion of domain results into the export schemas.
"""
import hashlib
from typing import Dict, List, Optional

from ..common.schemas.routing import (
    DeliveryStats, EakEntry, HopExport, NHListEntry, RouteExport, RoutingExport, TopologyExport,
)
from ..common.schemas.transcript import EnvelopeRecord, TranscriptRecord
from ..keyproto.crypto import material_bytes, payload_digest
from ..keyproto.domain import ProtocolTranscript
from ..netmodel.domain import NetworkGraph
from ..routing.domain import DeliveryTrace, HopRecord, RouteSet, RoutingState, TopologyCollection
from ..simharness.domain import RouteDeliveryResult


def routing_export(
    state: RoutingState, graph: NetworkGraph, unstable: List[int], worked_example: Dict, prefix_audit: Dict
) -> RoutingExport:
    levels = graph.hop_levels
    entries = []
    for node in graph.node_ids:
        record = state.eak_table[node]
        nh = state.nhlist(node)
        entries.append(EakEntry(
            node=node,
            hop_level=levels.get(node),
            eak=record.eak,
            last_hop_component=record.last_hop_component,
            relay_component=record.relay_component,
            nhlist=[
                NHListEntry(node=r, priority=i, eak_snapshot=e)
                for i, (r, e) in enumerate(zip(nh.entries, nh.eak_snapshot), start=1)
            ],
            relay_progression=list(nh.relay_progression),
            selectors=sorted(state.selectors.get(node, ())),
        ))
    return RoutingExport(
        mode=state.mode,
        rounds=state.round,
        sink=state.sink,
        is_fixpoint=not unstable,
        unstable_nodes=list(unstable),
        monotonicity_violations=state.admission_violations,
        reachable=state.reachable(),
        unreachable=state.unreachable(),
        entries=entries,
        worked_example=worked_example,
        prefix_audit=prefix_audit,
    )


def topology_export(collection: TopologyCollection) -> TopologyExport:
    return TopologyExport(
        records=len(collection.sink_table),
        unaggregated_messages=collection.unaggregated_messages,
        aggregated_messages=collection.aggregated_messages,
        unreachable=collection.unreachable,
    )


def _hop(h: HopRecord) -> HopExport:
    return HopExport(
        index=h.index, direction=h.direction, sender=h.sender, receiver=h.receiver, key_id=h.key_id,
        payload_digest=h.payload_digest,
    )


def _stats(result: Optional[RouteDeliveryResult]) -> Optional[DeliveryStats]:
    if result is None:
        return None
    return DeliveryStats(
        analytic=result.analytic,
        empirical=result.end_to_end.mean_rounds,
        stderr=result.end_to_end.stderr,
        trials=result.end_to_end.trials,
        per_hop_analytic=[h.analytic for h in result.hops],
    )


def route_export(
    route: RouteSet,
    trace: Optional[DeliveryTrace],
    node_count: int,
    query_delivery: Optional[RouteDeliveryResult] = None,
    reply_delivery: Optional[RouteDeliveryResult] = None,
) -> RouteExport:
    export = RouteExport(
        destination=route.destination,
        policy=route.policy,
        layers=[(sorted(a), sorted(b)) for a, b in route.hops],
        expanded_paths=[list(p) for p in route.expanded_paths],
        bottlenecks=list(route.bottlenecks),
        chosen_path=list(route.chosen_path) if route.chosen_path is not None else None,
        truncated=route.truncated,
        max_hops=route.max_hops,
        hop_bound=node_count - 1,
        query_delivery=_stats(query_delivery),
        reply_delivery=_stats(reply_delivery),
    )
    if trace is not None:
        export.query_hops = [_hop(h) for h in trace.query_hops]
        export.reply_path = list(trace.reply_path)
        export.reply_hops = [_hop(h) for h in trace.reply_hops]
        export.delivered = trace.delivered
        export.failure = trace.failure
        export.failed_hop = trace.failed_hop
    return export


def transcript_record(transcript: ProtocolTranscript) -> TranscriptRecord:
    key_digest = None
    if transcript.outcome is not None:
        key_digest = hashlib.blake2b(material_bytes(transcript.outcome.material), digest_size=8).hexdigest()
    return TranscriptRecord(
        kind=transcript.kind.value,
        owner=transcript.owner,
        members=list(transcript.members),
        established=transcript.established,
        failure=transcript.failure,
        key_digest=key_digest,
        steps=transcript.step_count,
        envelopes=[
            EnvelopeRecord(
                step=step,
                sender=env.sender,
                receiver=env.receiver,
                mode=env.mode.value,
                required_key_count=len(env.required_keys),
                group_key_id=env.group_key_id,
                counter=env.counter,
                payload_digest=payload_digest(env.payload),
            )
            for step, env in transcript.steps
        ],
    )


def transcript_records(transcripts: List[ProtocolTranscript]) -> List[TranscriptRecord]:
    return [transcript_record(t) for t in transcripts]
