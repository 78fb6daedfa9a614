import pytest
from src.common.config.manager import ConfigManager
from src.common.exceptions import ConfigurationError

def test_loads_shipped_default(config_manager):
    cfg = config_manager.load_scenario()
    assert cfg.node_count == 100
    assert cfg.h_fraction == 0.15
    assert cfg.topology is None

def test_loads_fixture(config_manager):
    cfg = config_manager.load_fixture("diamond")
    assert cfg.destination == 3
    assert len(cfg.topology.nodes) == 4
    assert len(cfg.topology.links) == 4

def test_dotlist_overrides(config_manager):
    cfg = config_manager.load_scenario(overrides=["seed=9", "routing.policy=min_hop", "simulation.trials=50"])
    assert cfg.seed == 9
    assert cfg.routing.policy == "min_hop"
    assert cfg.simulation.trials == 50

def test_missing_file_is_configuration_error(tmp_path):
    with pytest.raises(ConfigurationError):
        ConfigManager(tmp_path).load_scenario()

def test_json_scenario(tmp_path):
    path = tmp_path / "scenario.json"
    path.write_text('{"node_count": 20, "seed": 4}')
    cfg = ConfigManager().load_scenario(path)
    assert cfg.node_count == 20
    assert cfg.seed == 4

def test_validation_errors_name_the_field(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("node_count: 1\nk1: 70\nk2: 60\n")
    with pytest.raises(ConfigurationError) as exc:
        ConfigManager().load_scenario(path)
    assert "node_count" in str(exc.value)

def test_key_ring_constraint(config_manager):
    with pytest.raises(ConfigurationError):
        config_manager.load_scenario(overrides=["k1=80"])

def test_non_mapping_root(tmp_path):
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n")
    with pytest.raises(ConfigurationError):
        ConfigManager().load_scenario(path)
