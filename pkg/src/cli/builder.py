from typing import Any, Dict, List, Optional

import pandas as pd

from ..common.exceptions import UnreachableError
from ..common.logging import setup_logger
from ..common.metrics import MetricsCollector
from ..common.schemas.scenario import ScenarioConfig
from ..eka_core.metric import worked_example_check
from ..eka_core.oracle import MAX_SUBSET_CANDIDATES, best_subset_oracle
from ..keyproto.adversary import compromise_report
from ..keyproto.domain import ProtocolTranscript
from ..keyproto.exchange import establish_group_keys
from ..keyproto.party import KeyDirectory
from ..netmodel.deployment import build_network
from ..netmodel.domain import NetworkGraph
from ..routing.delivery import forward_query_and_reply, query_hop_failures, relay_hops
from ..routing.dispatch import dispatch_nhlists
from ..routing.domain import DeliveryTrace, RouteSet, RoutingState, TopologyCollection
from ..routing.fixpoint import candidate_inputs, compute_eak_to_sink, unstable_nodes
from ..routing.routes import construct_query_routes, default_destination
from ..routing.topology import collect_topology_at_sink, primary_depths
from ..simharness.delivery import simulate_route_delivery
from ..simharness.domain import RouteDeliveryResult
from ..simharness.table import expected_transmission_table

logger = setup_logger(__name__)


class ScenarioBuilder:
    """
    Builder pattern for running one scenario through the pipeline.
    Each stage builds its prerequisites on demand.
    """

    def __init__(self, config: ScenarioConfig):
        self.config = config
        self.metrics_collector = MetricsCollector()

        # Components
        self.graph: Optional[NetworkGraph] = None
        self.state: Optional[RoutingState] = None
        self.unstable: List[int] = []
        self.prefix_audit: Optional[Dict[str, Any]] = None
        self.dispatched: bool = False
        self.topology: Optional[TopologyCollection] = None
        self.directory: Optional[KeyDirectory] = None
        self.transcripts: List[ProtocolTranscript] = []
        self.route_set: Optional[RouteSet] = None
        self.trace: Optional[DeliveryTrace] = None
        self.query_delivery: Optional[RouteDeliveryResult] = None
        self.reply_delivery: Optional[RouteDeliveryResult] = None
        self.mc_table: Optional[pd.DataFrame] = None
        self.adversary: Optional[List[dict]] = None

    def build_graph(self) -> 'ScenarioBuilder':
        self.graph = build_network(self.config)
        logger.info(f"Graph: {len(self.graph.nodes)} nodes, {len(self.graph.links)} links")
        return self

    def build_routing(self) -> 'ScenarioBuilder':
        if self.graph is None:
            self.build_graph()
        routing = self.config.routing
        self.state = compute_eak_to_sink(self.graph, mode=routing.mode, epsilon=routing.epsilon)
        self.unstable = unstable_nodes(self.state, self.graph, routing.epsilon)
        if self.unstable:
            logger.warning(f"{routing.mode} table is not a fixpoint; recomputation would change {self.unstable}")
        return self

    def build_prefix_audit(self) -> 'ScenarioBuilder':
        """Subset-exhaustive exploration for every node with few enough candidates."""
        if self.state is None:
            self.build_routing()
        checked, skipped, counterexamples = 0, 0, []
        for u in sorted(self.graph.sink_component() - {self.graph.sink}):
            records, links = candidate_inputs(u, self.graph, self.state.eak_table)
            try:
                report = best_subset_oracle(u, records, links, sink=self.graph.sink)
            except ValueError:
                skipped += 1
                continue
            checked += 1
            if report.counterexample:
                counterexamples.append({
                    "node": u,
                    "best_prefix": list(report.best_prefix),
                    "best_prefix_value": report.best_prefix_value,
                    "best_subset": list(report.best_subset),
                    "best_subset_value": report.best_subset_value,
                })
        self.prefix_audit = {
            "max_candidates": MAX_SUBSET_CANDIDATES,
            "checked": checked,
            "skipped": skipped,
            "counterexamples": counterexamples,
        }
        return self

    def build_dispatch(self) -> 'ScenarioBuilder':
        if self.state is None:
            self.build_routing()
        self.state = dispatch_nhlists(self.state, self.metrics_collector).state
        self.dispatched = True
        return self

    def build_topology(self) -> 'ScenarioBuilder':
        if not self.dispatched:
            self.build_dispatch()
        self.topology = collect_topology_at_sink(self.state, self.graph, self.metrics_collector)
        return self

    def build_keys(self) -> 'ScenarioBuilder':
        if not self.dispatched:
            self.build_dispatch()
        self.directory = KeyDirectory.from_graph(self.graph, self.config.seed)
        nhlists = {u: nh.entries for u, nh in self.state.nhlists.items()}
        self.transcripts = establish_group_keys(nhlists, self.state.selectors, self.directory)
        self.metrics_collector.record("protocol_envelopes", sum(len(t.steps) for t in self.transcripts))
        return self

    def resolve_destination(self, destination: Optional[int] = None) -> int:
        if destination is None:
            destination = self.config.destination
        if destination is None:
            destination = default_destination(primary_depths(self.state), self.graph.sink)
        if destination is None:
            raise UnreachableError("No node is reachable from the sink")
        return destination

    def build_routes(self, destination: Optional[int] = None) -> 'ScenarioBuilder':
        if self.topology is None:
            self.build_topology()
        if self.directory is None:
            self.build_keys()
        target = self.resolve_destination(destination)
        routing = self.config.routing
        self.route_set = construct_query_routes(
            self.topology.sink_table, target, policy=routing.policy, path_cap=routing.path_cap
        )
        self.trace = forward_query_and_reply(
            self.route_set, self.state, self.directory, metrics=self.metrics_collector
        )
        return self

    def build_delivery_simulation(self) -> 'ScenarioBuilder':
        if self.route_set is None:
            self.build_routes()
        if self.route_set.chosen_path is None or not self.trace.reply_path:
            return self
        sim = self.config.simulation
        self.query_delivery = simulate_route_delivery(
            query_hop_failures(self.route_set.chosen_path, self.graph), sim.route_trials, self.config.seed
        )
        self.reply_delivery = simulate_route_delivery(
            relay_hops(self.trace.reply_path, self.state, self.graph), sim.route_trials, self.config.seed
        )
        return self

    def build_monte_carlo(self, trials: Optional[int] = None) -> 'ScenarioBuilder':
        sim = self.config.simulation
        self.mc_table = expected_transmission_table(
            sim.n_values, sim.f_values, trials or sim.trials, self.config.seed, workers=sim.workers
        )
        return self

    def build_adversary(self) -> 'ScenarioBuilder':
        if self.directory is None:
            self.build_keys()
        self.adversary = compromise_report(self.config.adversary.compromised_sets, self.transcripts, self.directory)
        return self

    def worked_example(self) -> Dict[str, Any]:
        return worked_example_check()

    def get_components(self) -> Dict[str, Any]:
        return {
            'graph': self.graph,
            'state': self.state,
            'topology': self.topology,
            'directory': self.directory,
            'transcripts': self.transcripts,
            'route_set': self.route_set,
            'trace': self.trace,
            'mc_table': self.mc_table,
            'adversary': self.adversary,
            'metrics': self.metrics_collector.get_metrics(),
        }
