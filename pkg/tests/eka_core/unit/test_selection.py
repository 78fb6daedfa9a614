import numpy as np
import pytest
from src.eka_core.domain import EakRecord, NHList
from src.eka_core.oracle import best_prefix_oracle, best_subset_oracle
from src.eka_core.selection import select_prefix, sorted_candidates, update_eak

def rec(node, eak):
    return EakRecord(node=node, eak=eak, last_hop_component=eak)

WORKED_RECORDS = [EakRecord.zero(0), rec(1, 24.0), rec(2, 20.0)]
WORKED_LINKS = {0: (30, 0.5), 1: (27, 0.5), 2: (22, 0.5)}

def test_worked_example_selects_all_three():
    record, nh = update_eak(3, WORKED_RECORDS, WORKED_LINKS, sink=0)
    assert nh.entries == (0, 1, 2)
    assert nh.relay_progression == pytest.approx((0.0, 8.0, 68 / 7))
    assert record.last_hop_component == pytest.approx(32.0)
    assert record.relay_component == pytest.approx(68 / 7)
    assert record.eak == pytest.approx(292 / 7)

def test_candidates_put_sink_first_and_drop_zero_eak():
    records = [rec(4, 5.0), rec(2, 9.0), EakRecord.zero(3), EakRecord.zero(0), rec(1, 9.0)]
    links = {n: (1, 0.5) for n in range(5)}
    assert [c.node for c in sorted_candidates(records, links, sink=0)] == [0, 1, 2, 4]

def test_missing_link_weights():
    with pytest.raises(KeyError):
        sorted_candidates([rec(1, 3.0)], {}, sink=0)

def test_admission_stops_at_first_rejection():
    # second candidate does not beat the relay value of the first
    record, nh = update_eak(3, [rec(2, 142 / 9), rec(1, 10.0)], {2: (10, 0.5), 1: (3, 0.5)}, sink=0)
    assert nh.entries == (2,)
    assert record.eak == pytest.approx(322 / 9)

def test_perfect_forwarder_ends_admission():
    records = [rec(1, 10.0), rec(2, 9.0)]
    _, nh = update_eak(5, records, {1: (4, 0.0), 2: (4, 0.5)}, sink=0)
    assert nh.entries == (1,)

def test_no_candidates_means_unreachable():
    record, nh = update_eak(7, [], {}, sink=0)
    assert record.eak == 0.0
    assert nh.is_empty
    assert nh == NHList.empty(7)

def test_relay_progression_is_increasing():
    rng = np.random.default_rng(11)
    for _ in range(200):
        count = int(rng.integers(1, 8))
        records = [rec(i, float(rng.uniform(1, 50))) for i in range(1, count + 1)]
        links = {r.node: (int(rng.integers(1, 40)), float(rng.uniform(0.05, 0.95))) for r in records}
        admitted, progression = select_prefix(sorted_candidates(records, links, sink=0))
        assert admitted
        assert all(b > a for a, b in zip(progression, progression[1:]))

@pytest.mark.parametrize("with_sink", [False, True])
def test_greedy_matches_prefix_oracle(with_sink):
    rng = np.random.default_rng(23 + with_sink)
    for _ in range(1000):
        count = int(rng.integers(1, 11))
        records = [rec(i, float(rng.uniform(0.5, 80))) for i in range(1, count + 1)]
        if with_sink:
            records.append(EakRecord.zero(0))
        links = {r.node: (int(rng.integers(1, 40)), float(rng.uniform(0.05, 0.95))) for r in records}
        record, nh = update_eak(99, records, links, sink=0)
        length, eak = best_prefix_oracle(99, records, links, sink=0)
        assert len(nh) == length
        assert record.eak == pytest.approx(eak)

def test_prefix_oracle_ranks_by_relay_value():
    # [0, 1] has the larger full EAK (116/3 + 8) but [0, 1, 2] the larger relay value
    two = update_eak(3, WORKED_RECORDS[:2], WORKED_LINKS, sink=0)[0]
    assert two.eak == pytest.approx(116 / 3 + 8)
    assert two.eak > 292 / 7
    length, eak = best_prefix_oracle(3, WORKED_RECORDS, WORKED_LINKS, sink=0)
    assert length == 3
    assert eak == pytest.approx(292 / 7)

def test_subset_oracle_on_worked_example():
    report = best_subset_oracle(3, WORKED_RECORDS, WORKED_LINKS, sink=0)
    assert report.best_prefix == (0, 1, 2)
    assert report.best_prefix_value == pytest.approx(68 / 7)
    assert not report.counterexample

def test_subset_oracle_never_reports_worse_than_prefix():
    rng = np.random.default_rng(5)
    for _ in range(100):
        count = int(rng.integers(1, 7))
        records = [rec(i, float(rng.uniform(0.5, 80))) for i in range(1, count + 1)]
        links = {r.node: (int(rng.integers(1, 40)), float(rng.uniform(0.05, 0.95))) for r in records}
        report = best_subset_oracle(99, records, links, sink=0)
        assert report.best_subset_value >= report.best_prefix_value

def test_subset_oracle_limit():
    records = [rec(i, float(i)) for i in range(1, 12)]
    links = {r.node: (3, 0.5) for r in records}
    with pytest.raises(ValueError):
        best_subset_oracle(99, records, links, sink=0)
