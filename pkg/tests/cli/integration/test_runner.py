import json
import pytest
from src.cli.runner import (
    EXIT_CONFIG, EXIT_CONVERGENCE, EXIT_OK, EXIT_PROTOCOL, EXIT_UNEXPECTED, EXIT_UNREACHABLE, exit_code_for,
    run_scenario,
)
from src.common.exceptions import (
    ChannelError, ConfigurationError, ConvergenceError, ReplayError, UnreachableError,
)

ALL_FILES = {
    "config.json", "graph.json", "graph.dot", "eak.json", "topology.json", "transcripts.json",
    "routes.json", "mc.csv", "adversary.json", "messages.csv",
}

def read(path, name):
    return json.loads((path / name).read_text())

def test_all_writes_every_report(load_fixture, tmp_path):
    bundle = run_scenario(load_fixture("diamond_shortcut", f"output_dir={tmp_path}"), "all")
    assert bundle.exit_code == EXIT_OK
    assert bundle.error is None
    assert set(bundle.manifest) == ALL_FILES
    assert read(tmp_path, "manifest.json") == bundle.manifest

    eak = read(tmp_path, "eak.json")
    # greedy finalisation leaves 1 and 2 short of what their later neighbour 3 offers
    assert not eak["is_fixpoint"]
    assert eak["unstable_nodes"] == [1, 2]
    assert eak["reachable"] == [1, 2, 3]
    assert eak["worked_example"]["computed_last_hop"] == pytest.approx(32.0)
    assert eak["prefix_audit"]["counterexamples"] == []

    routes = read(tmp_path, "routes.json")
    assert routes["chosen_path"] == [0, 2, 3]
    assert routes["reply_path"] == [3, 0]
    assert routes["delivered"]
    assert routes["hop_bound"] == 3
    assert routes["reply_delivery"]["analytic"] == pytest.approx(8 / 7)

    transcripts = read(tmp_path, "transcripts.json")
    assert len(transcripts) == 6
    assert all(t["established"] for t in transcripts)

    topology = read(tmp_path, "topology.json")
    assert (topology["unaggregated_messages"], topology["aggregated_messages"]) == (3, 3)

def test_outputs_are_reproducible(load_fixture, tmp_path):
    first = run_scenario(load_fixture("worked_example", f"output_dir={tmp_path / 'a'}"), "all")
    second = run_scenario(load_fixture("worked_example", f"output_dir={tmp_path / 'b'}"), "all")
    first.manifest.pop("config.json")
    second.manifest.pop("config.json")
    assert first.manifest == second.manifest

def test_seed_changes_random_deployment(config_manager, tmp_path):
    a = run_scenario(config_manager.load_scenario(overrides=["node_count=30", f"output_dir={tmp_path / 'a'}"]), "generate")
    b = run_scenario(
        config_manager.load_scenario(overrides=["node_count=30", "seed=2", f"output_dir={tmp_path / 'b'}"]), "generate"
    )
    assert a.manifest["graph.json"] != b.manifest["graph.json"]
    assert set(a.manifest) == {"config.json", "graph.json", "graph.dot"}

def test_unreachable_destination(load_fixture, tmp_path):
    bundle = run_scenario(load_fixture("diamond", f"output_dir={tmp_path}", "destination=9"), "routes")
    assert bundle.exit_code == EXIT_UNREACHABLE
    assert bundle.error["error"] == "UnreachableError"
    assert bundle.error["break_point"] == 9
    # earlier stages are still reported
    assert "eak.json" in bundle.manifest
    assert "routes.json" not in bundle.manifest

def test_mc_json_table(load_fixture, tmp_path):
    bundle = run_scenario(load_fixture("star", f"output_dir={tmp_path}"), "mc", fmt="json", trials=2_000)
    assert bundle.exit_code == EXIT_OK
    rows = read(tmp_path, "mc.json")
    assert len(rows) == 2 * 3
    assert {r["trials"] for r in rows} == {2_000}

def test_adversary_report(load_fixture, tmp_path):
    run_scenario(load_fixture("diamond", f"output_dir={tmp_path}"), "adversary")
    results = read(tmp_path, "adversary.json")["results"]
    assert [r["compromised"] for r in results] == [[1], [3]]
    # a relay holds every group key it belongs to
    derivable = {d["key_id"] for d in results[0]["derivable"]}
    assert {"fR_key:1", "fR_key:3", "bR_key:0", "bR_key:1"} <= derivable

def test_unknown_command(load_fixture, tmp_path):
    with pytest.raises(ConfigurationError):
        run_scenario(load_fixture("line", f"output_dir={tmp_path}"), "simulate")

@pytest.mark.parametrize("error, code", [
    (ConfigurationError("x"), EXIT_CONFIG),
    (UnreachableError("x", break_point=4), EXIT_UNREACHABLE),
    (ConvergenceError("x", oscillating=[2]), EXIT_CONVERGENCE),
    (ChannelError("x"), EXIT_PROTOCOL),
    (ReplayError("x"), EXIT_PROTOCOL),
    (RuntimeError("x"), EXIT_UNEXPECTED),
])
def test_exit_codes(error, code):
    assert exit_code_for(error) == code

def test_default_scenario_is_byte_reproducible(config_manager, tmp_path):
    cfg = config_manager.load_scenario(overrides=[f"output_dir={tmp_path}"])
    first = run_scenario(cfg, "all")
    second = run_scenario(cfg, "all")
    assert first.manifest == second.manifest
    assert first.exit_code == second.exit_code

def test_eka_on_line_fixture(load_fixture, tmp_path):
    bundle = run_scenario(load_fixture("line", f"output_dir={tmp_path}"), "eka")
    assert bundle.exit_code == EXIT_OK
    eak = {e["node"]: e["eak"] for e in read(tmp_path, "eak.json")["entries"]}
    assert eak == pytest.approx({0: 0.0, 1: 20.0, 2: 36.0})

def test_mc_reports_broadcast_closed_form(load_fixture, tmp_path):
    run_scenario(load_fixture("line", f"output_dir={tmp_path}"), "mc", fmt="json", trials=1_000)
    rows = read(tmp_path, "mc.json")
    (row,) = [r for r in rows if r["semantics"] == "broadcast_group_key" and r["n"] == 3]
    assert row["analytic"] == pytest.approx(1.1429, abs=1e-4)

def test_generate_twice_gives_identical_digests(load_fixture, tmp_path):
    first = run_scenario(load_fixture("binary_tree", f"output_dir={tmp_path}"), "generate")
    second = run_scenario(load_fixture("binary_tree", f"output_dir={tmp_path}"), "generate")
    assert first.manifest == second.manifest

def test_iterative_cap_exits_with_convergence_code(load_fixture, tmp_path):
    bundle = run_scenario(
        load_fixture("line", f"output_dir={tmp_path}", "routing.mode=iterative_relax"), "eka",
    )
    assert bundle.exit_code == EXIT_CONVERGENCE
    assert bundle.error["error"] == "ConvergenceError"
    assert bundle.error["oscillating"] == [1]
    assert "graph.json" in bundle.manifest
    assert "eak.json" not in bundle.manifest
