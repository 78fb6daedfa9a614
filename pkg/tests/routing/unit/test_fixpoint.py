import pytest
from src.common.exceptions import ConfigurationError, ConvergenceError
from src.common.schemas import TopologyConfig
from src.eka_core.selection import update_eak
from src.netmodel.deployment import build_network, graph_from_topology
from src.routing.fixpoint import candidate_inputs, compute_eak_to_sink, is_fixpoint, unstable_nodes
from src.routing.topology import primary_depths

def test_line_values(routed):
    _, state = routed("line")
    assert state.eak(1) == pytest.approx(20.0)
    assert state.eak(2) == pytest.approx(36.0)
    assert state.nhlist(1).entries == (0,)
    assert state.nhlist(2).entries == (1,)
    assert state.round == 2

def test_diamond_values(diamond):
    _, state = diamond
    assert state.eak(1) == pytest.approx(12.0)
    assert state.eak(3) == pytest.approx(22.0)
    assert state.eak(2) == pytest.approx(134 / 9)
    assert state.eak_table[2].last_hop_component == pytest.approx(68 / 9)
    assert state.eak_table[2].relay_component == pytest.approx(22 / 3)
    assert state.nhlist(3).entries == (1,)
    assert state.nhlist(2).entries == (0, 3)

def test_worked_example_values(routed):
    _, state = routed("worked_example")
    assert state.eak(3) == pytest.approx(60.0)
    assert state.nhlist(3).entries == (0,)
    assert state.eak(1) == pytest.approx(128 / 3)
    assert state.eak(2) == pytest.approx(116 / 3)
    assert state.nhlist(1).entries == (0, 3)
    assert state.nhlist(2).entries == (0, 3)

def test_shortcut_destination_keeps_both_arms(routed):
    _, state = routed("diamond_shortcut")
    assert state.nhlist(3).entries == (0, 2, 1)
    assert state.eak_table[3].last_hop_component == pytest.approx(232 / 49)
    assert state.eak(3) == pytest.approx(568 / 49)

def test_neighbour_farther_from_the_sink_is_a_candidate(diamond):
    graph, state = diamond
    assert graph.hop_levels[3] > graph.hop_levels[2]
    assert 3 in state.nhlist(2).entries

def test_candidate_inputs_cover_the_whole_neighbourhood(diamond):
    graph, state = diamond
    records, links = candidate_inputs(2, graph, state.eak_table)
    assert [r.node for r in records] == graph.neighbors(2) == [0, 3]
    assert links == {0: (4, 0.5), 3: (9, 0.5)}

@pytest.mark.parametrize("name, unstable", [
    ("line", [1]),
    ("star", []),
    ("diamond", [1, 3]),
    ("diamond_shortcut", [1, 2]),
    ("binary_tree", [1, 2]),
    ("worked_example", [3]),
])
def test_greedy_never_revisits_finalised_nodes(routed, name, unstable):
    graph, state = routed(name)
    assert unstable_nodes(state, graph) == unstable
    assert is_fixpoint(state, graph) == (not unstable)

def test_unstable_node_sees_the_later_neighbour(routed):
    graph, state = routed("line")
    records, links = candidate_inputs(1, graph, state.eak_table)
    record, nh = update_eak(1, records, links, sink=graph.sink)
    assert nh.entries == (0, 2)
    assert record.eak == pytest.approx(112 / 9 + 12)

def test_star_modes_agree(routed):
    graph, greedy = routed("star", "greedy_finalize")
    _, relaxed = routed("star", "iterative_relax")
    assert relaxed.round == 2
    for node in graph.node_ids:
        assert greedy.eak(node) == pytest.approx(relaxed.eak(node), abs=1e-9)
        assert greedy.nhlist(node).entries == relaxed.nhlist(node).entries
    assert is_fixpoint(relaxed, graph)

def test_iterative_cap_names_the_oscillating_nodes(fixture_graph):
    with pytest.raises(ConvergenceError) as exc:
        compute_eak_to_sink(fixture_graph("line"), "iterative_relax")
    assert exc.value.oscillating == frozenset({1})

def test_iterative_settles_above_greedy_when_given_rounds(fixture_graph):
    graph = fixture_graph("line")
    relaxed = compute_eak_to_sink(graph, "iterative_relax", max_rounds=200)
    # a and b select each other: E_a = 112/9 + E_b/3, E_b = 16 + E_a
    assert relaxed.eak(1) == pytest.approx(80 / 3, abs=1e-6)
    assert relaxed.eak(2) == pytest.approx(128 / 3, abs=1e-6)
    assert relaxed.nhlist(1).entries == (0, 2)
    assert relaxed.nhlist(2).entries == (1,)
    assert 3 < relaxed.round < 200
    assert is_fixpoint(relaxed, graph, epsilon=1e-6)
    assert compute_eak_to_sink(graph).eak(1) == pytest.approx(20.0)

@pytest.mark.parametrize("seed", [1, 2, 3])
def test_greedy_on_random_deployments(config_manager, seed):
    cfg = config_manager.load_scenario(overrides=[f"seed={seed}", "node_count=80"])
    graph = build_network(cfg)
    state = compute_eak_to_sink(graph, "greedy_finalize")
    assert state.reachable() == sorted(graph.sink_component() - {graph.sink})
    assert state.monotonicity_violations() == []
    assert state.admission_violations == 0
    # primary relays are always finalised before their owner, so every chain ends at the sink
    assert set(primary_depths(state)) == set(graph.sink_component())
    for node in state.reachable():
        if graph.link(node, graph.sink) is not None:
            assert state.nhlist(node).primary == graph.sink

def test_isolated_node_is_unreachable():
    topology = TopologyConfig(
        nodes=[{"id": 0, "tier": "Sink"}, {"id": 1}, {"id": 2}],
        links=[{"u": 0, "v": 1, "k": 4, "f": 0.5}],
    )
    state = compute_eak_to_sink(graph_from_topology(topology))
    assert state.reachable() == [1]
    assert state.unreachable() == [2]
    assert state.eak(2) == 0.0

def test_unknown_mode(fixture_graph):
    with pytest.raises(ConfigurationError):
        compute_eak_to_sink(fixture_graph("line"), "bellman_ford")

def test_star_leaves_use_the_sink_alone(routed):
    graph, state = routed("star")
    for leaf, k in zip([1, 2, 3, 4], [5, 6, 7, 8]):
        assert state.eak(leaf) == pytest.approx(k / 0.5)
        assert state.nhlist(leaf).entries == (graph.sink,)
