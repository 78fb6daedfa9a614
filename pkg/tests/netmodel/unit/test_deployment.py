import math

import numpy as np
import pytest
from src.common.exceptions import ConfigurationError
from src.common.schemas import ScenarioConfig
from src.netmodel.deployment import (
    assign_key_rings, build_links, build_network, expected_shared_keys, generate_deployment,
    graph_from_topology, h_tier_count, in_range_pairs, key_share_probability, shared_keys,
)
from src.netmodel.domain import KeyPool, KeyRing, NetworkGraph, NodeSpec, Tier
from src.netmodel.export import graph_hash, to_dot, to_json
from src.netmodel.failure_models import ConstantFailure

def small_config(**kwargs):
    return ScenarioConfig(**{"node_count": 40, **kwargs})

def test_h_tier_count_rounds_half_up():
    assert h_tier_count(100, 0.15) == 15
    assert h_tier_count(10, 0.25) == 3
    assert h_tier_count(5, 1.0) == 4

def test_deployment_layout():
    cfg = small_config()
    graph = generate_deployment(cfg)
    assert len(graph.nodes) == 40
    sink = graph.node(graph.sink)
    assert sink.position == (50.0, 50.0)
    assert sink.range_m == cfg.range_h
    tiers = [n.tier for n in graph.nodes if n.id != graph.sink]
    assert tiers.count(Tier.H) == h_tier_count(40, cfg.h_fraction)
    for n in graph.nodes:
        assert 0.0 <= n.position[0] <= cfg.area.w
        assert 0.0 <= n.position[1] <= cfg.area.h
        assert n.range_m == (cfg.range_l if n.tier == Tier.L else cfg.range_h)

def test_key_rings_have_tier_sizes():
    cfg = small_config()
    graph = assign_key_rings(generate_deployment(cfg), KeyPool(cfg.pool_size), cfg.k1, cfg.k2, cfg.seed)
    for n in graph.nodes:
        assert n.ring.size == (cfg.k1 if n.tier == Tier.L else cfg.k2)
        assert all(k in KeyPool(cfg.pool_size) for k in n.ring.keys)

def test_key_rings_reject_bad_sizes():
    graph = generate_deployment(small_config())
    with pytest.raises(ConfigurationError):
        assign_key_rings(graph, KeyPool(50), 30, 60, 1)

def test_links_need_range_and_a_shared_key():
    cfg = small_config(node_count=60)
    graph = build_network(cfg)
    assert graph.links
    for link in graph.links:
        a, b = graph.node(link.u), graph.node(link.v)
        assert a.distance_to(b) <= min(a.range_m, b.range_m)
        assert link.shared_keys == a.ring.keys & b.ring.keys
        assert link.f == 0.5

def test_invalid_failure_model_output():
    class Broken:
        def failure(self, a, b, distance):
            return 1.0

    cfg = ScenarioConfig(node_count=30, pool_size=40, k1=30, k2=35)
    graph = assign_key_rings(generate_deployment(cfg), KeyPool(cfg.pool_size), cfg.k1, cfg.k2, cfg.seed)
    with pytest.raises(ConfigurationError):
        build_links(graph, Broken())

def test_same_seed_same_graph():
    cfg = small_config()
    assert to_json(build_network(cfg)) == to_json(build_network(cfg))
    assert graph_hash(build_network(cfg)) != graph_hash(build_network(cfg, seed=cfg.seed + 1))

def test_fixture_links_share_exactly_k_keys(load_fixture):
    cfg = load_fixture("worked_example")
    graph = graph_from_topology(cfg.topology)
    assert {l.endpoints: l.k for l in graph.links} == {(0, 1): 12, (0, 2): 10, (0, 3): 30, (1, 3): 27, (2, 3): 22}
    ring_0 = graph.node(0).ring.keys
    ring_3 = graph.node(3).ring.keys
    assert len(ring_0 & ring_3) == 30
    assert len(graph.node(1).ring.keys & graph.node(2).ring.keys) == 0

def test_key_share_probability():
    assert key_share_probability(1000, 0, 30) == 0.0
    assert key_share_probability(10, 6, 6) == 1.0
    p = key_share_probability(1000, 30, 30)
    assert p == pytest.approx(1.0 - math.comb(970, 30) / math.comb(1000, 30))
    assert key_share_probability(1000, 30, 60) > p
    assert expected_shared_keys(1000, 30, 60) == pytest.approx(1.8)

def test_dot_export_lists_every_link(fixture_graph):
    graph = fixture_graph("diamond")
    dot = to_dot(graph)
    assert dot.startswith("graph wsn {")
    assert dot.count(" -- ") == len(graph.links)
    assert "0 [shape=doublecircle" in dot

def test_constant_failure_model_used_by_build_links(fixture_graph):
    graph = fixture_graph("line")
    relinked = build_links(graph.with_rings({}), ConstantFailure(0.2))
    # positions 20 m apart, L range 25 m: only consecutive nodes link
    assert [l.endpoints for l in relinked.links] == [(0, 1), (1, 2)]
    assert all(l.f == 0.2 for l in relinked.links)

def test_minimal_network_has_sink_and_one_l_node():
    graph = generate_deployment(ScenarioConfig(node_count=2, h_fraction=0.0), seed=7)
    assert [n.tier for n in graph.nodes] == [Tier.SINK, Tier.L]
    assert graph.sink == 0


def test_full_pool_gives_identical_rings():
    cfg = ScenarioConfig(node_count=12, pool_size=30, k1=30, k2=30, range_l=60.0, range_h=60.0)
    graph = build_network(cfg)
    assert len({n.ring.keys for n in graph.nodes}) == 1
    assert graph.links
    assert all(l.k == 30 for l in graph.links)
    assert len(graph.links) == sum(1 for _ in in_range_pairs(graph))


def test_shared_keys_is_set_intersection():
    a, b = KeyRing(frozenset({1, 2, 3})), KeyRing(frozenset({2, 3, 4}))
    assert shared_keys(a, b) == {2, 3} == shared_keys(b, a)
    assert shared_keys(a, a) == a.keys
    assert shared_keys(a, KeyRing(frozenset({7, 8}))) == frozenset()


def test_disjoint_or_distant_pairs_get_no_link():
    near = NodeSpec(id=0, tier=Tier.SINK, position=(0.0, 0.0), range_m=40.0, ring=KeyRing(frozenset({1, 2})))
    disjoint = NodeSpec(id=1, tier=Tier.L, position=(10.0, 0.0), range_m=25.0, ring=KeyRing(frozenset({3})))
    far = NodeSpec(id=2, tier=Tier.L, position=(90.0, 0.0), range_m=25.0, ring=KeyRing(frozenset({1, 2})))
    graph = build_links(NetworkGraph(nodes=(near, disjoint, far)), ConstantFailure(0.5))
    assert graph.links == ()


def test_single_shared_key_with_perfect_link():
    sink = NodeSpec(id=0, tier=Tier.SINK, position=(0.0, 0.0), range_m=40.0, ring=KeyRing(frozenset({1, 2})))
    node = NodeSpec(id=1, tier=Tier.L, position=(10.0, 0.0), range_m=25.0, ring=KeyRing(frozenset({2, 3})))
    (link,) = build_links(NetworkGraph(nodes=(sink, node)), ConstantFailure(0.0)).links
    assert (link.k, link.f) == (1, 0.0)


def test_mean_ring_overlap_matches_hypergeometric_mean():
    graph = generate_deployment(ScenarioConfig(node_count=2, h_fraction=0.0, k2=30))
    pool = KeyPool(1000)
    overlaps = []
    for seed in range(5000):
        keyed = assign_key_rings(graph, pool, 30, 30, seed)
        overlaps.append(len(keyed.node(0).ring.keys & keyed.node(1).ring.keys))
    assert np.mean(overlaps) == pytest.approx(expected_shared_keys(1000, 30, 30), abs=0.05)


def test_secure_pair_fraction_converges_to_share_probability():
    secure = total = 0
    for seed in range(30):
        graph = build_network(ScenarioConfig(node_count=40, h_fraction=0.0, k1=30, k2=30, seed=seed))
        pairs = sum(1 for _ in in_range_pairs(graph))
        secure += len(graph.links)
        total += pairs
    p = key_share_probability(1000, 30, 30)
    stderr = math.sqrt(p * (1 - p) / total)
    assert abs(secure / total - p) <= 4 * stderr
