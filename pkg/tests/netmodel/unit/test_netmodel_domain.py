import pytest
from src.netmodel.domain import KeyRing, LinkInfo, NetworkGraph, NodeSpec, Tier

def _node(i, tier=Tier.L):
    return NodeSpec(id=i, tier=tier, position=(float(i), 0.0), range_m=25.0)

def test_link_endpoints_are_normalized():
    link = LinkInfo(u=5, v=2, shared_keys={7, 1}, f=0.3)
    assert link.endpoints == (2, 5)
    assert link.k == 2
    assert link.other(2) == 5
    with pytest.raises(KeyError):
        link.other(9)

def test_link_validation():
    with pytest.raises(ValueError):
        LinkInfo(u=1, v=2, shared_keys=set(), f=0.3)
    with pytest.raises(ValueError):
        LinkInfo(u=1, v=2, shared_keys={1}, f=1.0)
    with pytest.raises(ValueError):
        LinkInfo(u=1, v=1, shared_keys={1}, f=0.1)

def test_graph_requires_exactly_one_sink():
    with pytest.raises(ValueError):
        NetworkGraph(nodes=(_node(0), _node(1)))
    with pytest.raises(ValueError):
        NetworkGraph(nodes=(_node(0, Tier.SINK), _node(1, Tier.SINK)))

def test_graph_rejects_duplicate_links():
    nodes = (_node(0, Tier.SINK), _node(1))
    links = (LinkInfo(0, 1, {1}, 0.5), LinkInfo(1, 0, {2}, 0.5))
    with pytest.raises(ValueError):
        NetworkGraph(nodes=nodes, links=links)

def test_graph_is_canonical_and_indexes_neighbours():
    nodes = (_node(2), _node(0, Tier.SINK), _node(1))
    links = (LinkInfo(2, 1, {4}, 0.5), LinkInfo(0, 1, {3}, 0.5))
    graph = NetworkGraph(nodes=nodes, links=links)
    assert graph.node_ids == [0, 1, 2]
    assert [l.endpoints for l in graph.links] == [(0, 1), (1, 2)]
    assert graph.neighbors(1) == [0, 2]
    assert graph.link(2, 1).k == 1
    assert graph.link(0, 2) is None
    assert graph.sink == 0

def test_hop_levels_cover_only_the_sink_component():
    nodes = (_node(0, Tier.SINK), _node(1), _node(2), _node(3))
    links = (LinkInfo(0, 1, {1}, 0.5), LinkInfo(1, 2, {2}, 0.5))
    graph = NetworkGraph(nodes=nodes, links=links)
    assert graph.hop_levels == {0: 0, 1: 1, 2: 2}
    assert 3 not in graph.sink_component()

def test_key_ring():
    ring = KeyRing(frozenset({9, 3, 5}))
    assert ring.size == 3
    assert ring.sorted() == [3, 5, 9]
    assert 5 in ring
