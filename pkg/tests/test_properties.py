"""Randomised invariants over small component pairs (at most 4 states,
at most 3 actions per alphabet class, queue bounds 1 to 3)."""

from hypothesis import HealthCheck, given, settings

import oracle
from iocompat import (
    async_compat_bounded,
    async_explore,
    half_duplex_check,
    io_separated,
    strong_sync,
    sync_product,
    wac,
)
from iocompat.audit import empty_queue_embedding_violations, property_q_violations, replay_audit
from strategies import pairs

BOUNDS = (1, 2, 3)
SAMPLES = 500
SETTINGS = settings(
    max_examples=SAMPLES,
    deadline=None,
    derandomize=True,
    suppress_health_check=list(HealthCheck),
)


def half_duplex_matches_k1(a, b, graphs):
    filled = any(c.both_nonempty for c in graphs[1].nodes)
    return half_duplex_check(a, b).holds == (not filled)


def empty_queue_embedding(a, b, graphs):
    return all(not empty_queue_embedding_violations(g) for g in graphs.values())


def queue_words_explained(a, b, graphs):
    return all(not property_q_violations(g) for g in graphs.values())


def wac_excludes_weak_violations(a, b, graphs):
    if not wac(a, b).holds:
        return True
    return not any(async_compat_bounded(a, b, k, "weak", graph=g).fails for k, g in graphs.items())


def strong_half_duplex_excludes_strong_violations(a, b, graphs):
    if not (strong_sync(a, b).holds and half_duplex_check(a, b).holds):
        return True
    return not any(async_compat_bounded(a, b, k, "strong", graph=g).fails for k, g in graphs.items())


def separated_strong_implies_half_duplex(a, b, graphs):
    if io_separated(a).holds and io_separated(b).holds and strong_sync(a, b).holds:
        return half_duplex_check(a, b).holds
    return True


PROPERTIES = {
    "a": half_duplex_matches_k1,
    "b": empty_queue_embedding,
    "c": queue_words_explained,
    "d": wac_excludes_weak_violations,
    "e": strong_half_duplex_excludes_strong_violations,
    "f": separated_strong_implies_half_duplex,
}


def broken_properties(a, b) -> list[str]:
    graphs = {k: async_explore(a, b, k) for k in BOUNDS}
    return [name for name, check in PROPERTIES.items() if not check(a, b, graphs)]


@SETTINGS
@given(pairs())
def test_all_properties(pair):
    assert broken_properties(*pair) == []


@SETTINGS
@given(pairs())
def test_explorer_agrees_with_oracle(pair):
    a, b = pair
    assert {tuple(n) for n in sync_product(a, b).nodes} == oracle.reach_sync(a, b)
    for k in BOUNDS:
        g = async_explore(a, b, k)
        configs, cut, _ = oracle.reach_async(a, b, k)
        assert {((c.left_state, c.left_queue), (c.right_state, c.right_queue)) for c in g.nodes} == configs
        assert len(g.horizon) == len(cut)
        assert replay_audit(g) == []


@SETTINGS
@given(pairs())
def test_half_duplex_matches_oracle(pair):
    assert half_duplex_check(*pair).holds == oracle.half_duplex_k1(*pair)


@SETTINGS
@given(pairs())
def test_weak_violations_match_oracle(pair):
    a, b = pair
    for k in BOUNDS:
        verdict = async_compat_bounded(a, b, k, "weak")
        assert verdict.fails == bool(oracle.async_violations(a, b, k, weak=True))
