import dataclasses
import numpy as np
import pytest
from src.common.exceptions import IntegrityError, ReplayError
from src.keyproto.crypto import combine_shares
from src.keyproto.domain import GroupKind
from src.keyproto.exchange import establish_group_keys, run_br_key_exchange, run_fr_key_exchange
from src.keyproto.party import KeyDirectory

def star_directory():
    # selector 0 shares two keys with each of 1, 2, 3; node 4 shares nothing
    return KeyDirectory({0: {1, 2, 3, 4, 5, 6}, 1: {1, 2}, 2: {3, 4}, 3: {5, 6}, 4: {99}}, seed=2)

def test_fr_single_relay_takes_three_envelopes():
    t = run_fr_key_exchange(0, [1], star_directory())
    assert t.established
    assert [step for step, _ in t.steps] == [1, 2, 3]
    assert t.outcome.key_id == "fR_key:0"

def test_fr_members_agree_on_xor_of_shares():
    directory = star_directory()
    t = run_fr_key_exchange(0, [1, 2, 3], directory)
    assert t.established
    assert len(t.envelopes) == 9
    assert t.step_count == 9
    shares = [directory.party(n).shares[0] for n in (0, 1, 2, 3)]
    assert t.outcome.material == combine_shares(shares)
    assert set(t.member_keys.values()) == {t.outcome.material}
    assert directory.holders("fR_key:0") == frozenset({0, 1, 2, 3})
    assert t.outcome.atoms == frozenset({"0#0", "1#0", "2#0", "3#0"})

def test_fr_dispatch_excludes_receiver_share():
    t = run_fr_key_exchange(0, [1, 2, 3], star_directory())
    for step, env in t.steps:
        if step > 6:
            assert f"{env.receiver}#0" not in env.content
            assert len(env.content) == 3

def test_fr_without_channel_fails_before_sending():
    directory = star_directory()
    t = run_fr_key_exchange(0, [1, 4], directory)
    assert not t.established
    assert t.failure.startswith("ChannelError")
    assert t.steps == []
    assert directory.group_key("fR_key:0") is None

def test_fr_rejects_bad_member_lists():
    with pytest.raises(ValueError):
        run_fr_key_exchange(0, [], star_directory())
    with pytest.raises(ValueError):
        run_fr_key_exchange(0, [1, 1], star_directory())

def test_tampering_aborts_at_the_failing_step():
    def tamper(env):
        if env.step == 2:
            return dataclasses.replace(env, payload=b"\x00" * len(env.payload))
        return env

    t = run_fr_key_exchange(0, [1, 2], star_directory(), interceptor=tamper)
    assert not t.established
    assert isinstance(t.error, IntegrityError)
    assert t.steps[-1][0] == 2
    with pytest.raises(IntegrityError):
        t.raise_for_failure()

def test_replayed_share_is_rejected():
    directory = star_directory()
    t = run_fr_key_exchange(0, [1, 2, 3], directory)
    step_4 = next(env for step, env in t.steps if step == 4)
    with pytest.raises(ReplayError):
        directory.party(step_4.receiver).open(step_4)

def br_directory():
    directory = KeyDirectory({1: {1}, 2: {2}, 3: {3}, 10: {1, 2, 3}}, seed=4)
    for selector in (1, 2, 3):
        assert run_fr_key_exchange(selector, [10], directory).established
    return directory

def test_br_three_selectors():
    directory = br_directory()
    t = run_br_key_exchange(10, [1, 2, 3], directory)
    assert t.established
    assert len(t.envelopes) == 9
    assert t.step_count == 7
    assert all(env.group_key_id == f"fR_key:{env.sender if step > 3 and step < 7 else env.receiver}"
               for step, env in t.steps)
    assert directory.holders("bR_key:10") == frozenset({1, 2, 3, 10})

def test_br_needs_fr_keys():
    directory = KeyDirectory({1: {1}, 10: {1}}, seed=4)
    t = run_br_key_exchange(10, [1], directory)
    assert not t.established
    assert t.failure.startswith("MissingGroupKeyError")

def test_establish_group_keys_runs_fr_then_br():
    directory = KeyDirectory({0: {1, 2}, 1: {1, 3}, 2: {2, 3}}, seed=8)
    nhlists = {1: [0], 2: [0, 1], 0: []}
    selectors = {0: [1, 2], 1: [2]}
    transcripts = establish_group_keys(nhlists, selectors, directory)
    assert [(t.kind, t.owner) for t in transcripts] == [
        (GroupKind.FR, 1), (GroupKind.FR, 2), (GroupKind.BR, 0), (GroupKind.BR, 1),
    ]
    assert all(t.established for t in transcripts)

@pytest.mark.slow
def test_randomized_exchanges_agree_bit_for_bit():
    rng = np.random.default_rng(17)
    for trial in range(1000):
        n = int(rng.integers(1, 7))
        rings = {0: set(range(100))}
        for r in range(1, n + 1):
            rings[r] = {int(k) for k in rng.choice(100, size=int(rng.integers(1, 5)), replace=False)}
        # node 50 links to every relay through a private key 300 + r
        rings[50] = {300 + r for r in range(1, n + 1)}
        for r in range(1, n + 1):
            rings[r].add(300 + r)
        directory = KeyDirectory(rings, seed=trial)

        fr = run_fr_key_exchange(0, list(range(1, n + 1)), directory)
        assert fr.established
        assert all(directory.party(m).group_keys["fR_key:0"].material == fr.outcome.material for m in fr.members)

        for r in range(1, n + 1):
            assert run_fr_key_exchange(r, [50], directory).established
        br = run_br_key_exchange(50, list(range(1, n + 1)), directory)
        assert br.established
        assert len(set(br.member_keys.values())) == 1
        assert all(directory.party(m).group_keys["bR_key:50"].material == br.outcome.material for m in br.members)
