import pytest
from pathlib import Path

from src.common.config.manager import ConfigManager
from src.netmodel.deployment import build_network
from src.routing.dispatch import dispatch_nhlists
from src.routing.fixpoint import compute_eak_to_sink

CONF_DIR = Path(__file__).resolve().parents[1] / "conf"


@pytest.fixture
def config_manager():
    return ConfigManager(CONF_DIR)


@pytest.fixture
def load_fixture(config_manager):
    """Loads a scenario from the fixture library, optionally with dot-list overrides."""
    def _load(name, *overrides):
        return config_manager.load_fixture(name, overrides)
    return _load


@pytest.fixture
def fixture_graph(load_fixture):
    def _graph(name):
        return build_network(load_fixture(name))
    return _graph


@pytest.fixture
def routed(fixture_graph):
    """(graph, dispatched routing state) for a fixture."""
    def _routed(name, mode="greedy_finalize"):
        graph = fixture_graph(name)
        state = dispatch_nhlists(compute_eak_to_sink(graph, mode=mode)).state
        return graph, state
    return _routed


@pytest.fixture
def diamond(routed):
    return routed("diamond")
