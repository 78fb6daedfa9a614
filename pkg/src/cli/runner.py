"""
Scenario orchestration: which stages each command runs and which files it writes.
"""
import json
from dataclasses import dataclass, field
from typing import Dict, Optional

import pandas as pd

from ..common.exceptions import (
    ConfigurationError, ConvergenceError, ProtocolError, UnreachableError, WsnError,
)
from ..common.logging import setup_logger
from ..common.schemas.scenario import ScenarioConfig
from .builder import ScenarioBuilder
from .report import ReportWriter
from .serializers import route_export, routing_export, topology_export, transcript_records

logger = setup_logger(__name__)

COMMANDS = ("generate", "eka", "keys", "routes", "mc", "adversary", "all")

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_CONFIG = 2
EXIT_UNREACHABLE = 3
EXIT_CONVERGENCE = 4
EXIT_PROTOCOL = 5

_NEEDS_GRAPH = {"generate", "eka", "keys", "routes", "adversary", "all"}
_NEEDS_ROUTING = {"eka", "keys", "routes", "adversary", "all"}
_NEEDS_KEYS = {"keys", "routes", "adversary", "all"}


@dataclass
class ReportBundle:
    output_dir: str
    manifest: Dict[str, str] = field(default_factory=dict)
    exit_code: int = EXIT_OK
    error: Optional[Dict[str, object]] = None


def exit_code_for(error: BaseException) -> int:
    if isinstance(error, ConfigurationError):
        return EXIT_CONFIG
    if isinstance(error, UnreachableError):
        return EXIT_UNREACHABLE
    if isinstance(error, ConvergenceError):
        return EXIT_CONVERGENCE
    if isinstance(error, ProtocolError):
        return EXIT_PROTOCOL
    return EXIT_UNEXPECTED


def error_payload(error: BaseException) -> Dict[str, object]:
    payload: Dict[str, object] = {
        "error": type(error).__name__,
        "message": str(error),
        "exit_code": exit_code_for(error),
    }
    if isinstance(error, UnreachableError) and error.break_point is not None:
        payload["break_point"] = error.break_point
    if isinstance(error, ConvergenceError):
        payload["oscillating"] = sorted(error.oscillating)
    return payload


def error_line(error: BaseException) -> str:
    return json.dumps(error_payload(error), sort_keys=False)


def _write_pipeline(builder: ScenarioBuilder, writer: ReportWriter, command: str,
                    destination: Optional[int], trials: Optional[int]) -> None:
    if command in _NEEDS_GRAPH:
        builder.build_graph()
        writer.write_graph(builder.graph)

    if command in _NEEDS_ROUTING:
        builder.build_routing().build_prefix_audit().build_dispatch()
        writer.write_json("eak.json", routing_export(
            builder.state, builder.graph, builder.unstable, builder.worked_example(), builder.prefix_audit,
        ))

    if command in _NEEDS_KEYS:
        builder.build_topology().build_keys()
        writer.write_json("topology.json", topology_export(builder.topology))
        writer.write_json("transcripts.json", [r.model_dump(mode="json") for r in transcript_records(builder.transcripts)])

    if command in ("routes", "all"):
        builder.build_routes(destination).build_delivery_simulation()
        writer.write_json("routes.json", route_export(
            builder.route_set, builder.trace, len(builder.graph.nodes), builder.query_delivery, builder.reply_delivery,
        ))

    if command in ("mc", "all"):
        builder.build_monte_carlo(trials)
        writer.write_table("mc", builder.mc_table)

    if command in ("adversary", "all"):
        builder.build_adversary()
        writer.write_json("adversary.json", {
            "model": "symbolic; envelopes open with their full key set, payloads XOR share atoms",
            "results": builder.adversary,
        })

    if command in _NEEDS_KEYS:
        writer.write_table("messages", pd.DataFrame(builder.metrics_collector.get_metrics().to_rows()))


def _protocol_failure(builder: ScenarioBuilder) -> Optional[ProtocolError]:
    failed = [t for t in builder.transcripts if not t.established]
    if failed:
        return ProtocolError(f"{len(failed)} group key establishments failed; first: {failed[0].failure}")
    if builder.trace is not None and not builder.trace.delivered:
        return ProtocolError(f"Delivery failed at {builder.trace.failed_direction} hop {builder.trace.failed_hop}")
    return None


def run_scenario(
    config: ScenarioConfig,
    command: str = "all",
    fmt: str = "csv",
    destination: Optional[int] = None,
    trials: Optional[int] = None,
) -> ReportBundle:
    """
    Runs one command. Errors are turned into an exit code and an error payload; files written
    before the error are kept.
    """
    if command not in COMMANDS:
        raise ConfigurationError(f"Unknown command '{command}', expected one of {COMMANDS}")
    writer = ReportWriter(config.output_dir, fmt)
    bundle = ReportBundle(output_dir=config.output_dir)
    builder = ScenarioBuilder(config)
    writer.write_config(config)
    try:
        _write_pipeline(builder, writer, command, destination, trials)
        failure = _protocol_failure(builder)
        if failure is not None:
            raise failure
    except WsnError as e:
        logger.error(f"{command} failed: {e}")
        bundle.exit_code = exit_code_for(e)
        bundle.error = error_payload(e)
    bundle.manifest = writer.write_manifest()
    return bundle
