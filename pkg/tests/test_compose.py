import pytest

import oracle
from iocompat import (
    AsyncConfig,
    BoundTooSmall,
    StateLimitExceeded,
    async_explore,
    criterion_product_left,
    criterion_product_right,
    fixtures,
    make_iots,
    sync_product,
)
from iocompat.audit import (
    empty_queue_embedding_violations,
    property_p_violations,
    property_q_violations,
    replay_audit,
)
from iocompat.compose import MAX_STATES_ENV, format_queue

PAIRS = sorted(fixtures.PAIRS)


def as_oracle(c):
    return (c.left_state, c.left_queue), (c.right_state, c.right_queue)


def test_maker_user_sync_product():
    g = sync_product(*fixtures.pair("maker_user"))
    assert {str(n) for n in g.nodes} == {"(0,0)", "(1,0)", "(2,0)", "(0,1)", "(1,1)", "(2,1)"}
    assert "(2,1)" in {str(n) for n in g.nodes}
    # shared actions become internal
    assert g.internals >= {"ready", "fail"}
    assert g.trace(g.nodes[-1])


def test_ma_mb_sync_product_reaches_both_sending():
    g = sync_product(*fixtures.pair("ma_mb"))
    assert "(2,2)" in {str(n) for n in g.nodes}
    assert g.out_degree(next(n for n in g.nodes if str(n) == "(2,2)")) == 0


@pytest.mark.parametrize("product", [sync_product, criterion_product_left])
def test_ma_mb_reaches_2_3(product):
    # MB takes readyA into its using state 3 while MA produces the next item
    g = product(*fixtures.pair("ma_mb"))
    node = next(n for n in g.nodes if str(n) == "(2,3)")
    assert g.trace(node) == ["materialA", "makeA", "readyA", "materialA", "makeA"]


@pytest.mark.parametrize("name", PAIRS)
def test_sync_product_matches_oracle(name):
    a, b = fixtures.pair(name)
    g = sync_product(a, b)
    assert {tuple(n) for n in g.nodes} == oracle.reach_sync(a, b)
    for n in g.nodes:
        assert g.out_degree(n) == oracle.sync_successor_count(a, b, n)


@pytest.mark.parametrize("name", PAIRS)
def test_criterion_products_rename(name):
    a, b = fixtures.pair(name)
    left = criterion_product_left(a, b)
    right = criterion_product_right(a, b)
    assert left.left is a and right.right is b
    assert all(not x.endswith(">") for x in left.left.actions)
    assert {x for x in left.right.actions if x.endswith(">")} == {x + ">" for x in b.outputs & a.inputs}


@pytest.mark.parametrize("name", PAIRS)
@pytest.mark.parametrize("k", [1, 2, 3])
def test_async_explore_matches_oracle(name, k):
    a, b = fixtures.pair(name)
    g = async_explore(a, b, k)
    configs, cut, _ = oracle.reach_async(a, b, k)
    assert {as_oracle(c) for c in g.nodes} == configs
    assert {as_oracle(c) for c in g.horizon} == cut
    assert g.exhaustive == (not cut)


@pytest.mark.parametrize("name", PAIRS)
@pytest.mark.parametrize("k", [1, 2, 3])
def test_async_invariants_on_fixtures(name, k):
    g = async_explore(*fixtures.pair(name), k)
    assert replay_audit(g) == []
    assert property_q_violations(g) == []
    assert empty_queue_embedding_violations(g) == []


@pytest.mark.parametrize("name", ["maker_user", "fig7", "ex63_recv"])
def test_property_p_on_half_duplex_fixtures(name):
    g = async_explore(*fixtures.pair(name), 3)
    assert property_p_violations(g) == []
    assert not any(c.both_nonempty for c in g.nodes)


@pytest.mark.parametrize("name", PAIRS)
def test_exploration_monotone_in_bound(name):
    a, b = fixtures.pair(name)
    previous = set()
    for k in (1, 2, 3, 4):
        nodes = set(async_explore(a, b, k).nodes)
        assert previous <= nodes
        previous = nodes


def test_fig4_has_both_queues_filled_at_k1():
    g = async_explore(*fixtures.pair("fig4"), 1)
    filled = [c for c in g.nodes if c.both_nonempty]
    assert str(AsyncConfig("1", ("a",), "1", ("b",))) in {str(c) for c in filled}


def test_config_rendering():
    assert str(AsyncConfig("2", (), "0", ())) == "((2,ε),(0,ε))"
    assert str(AsyncConfig("1", ("a", "c"), "0", ())) == "((1,a.c),(0,ε))"
    assert format_queue(()) == "ε"


def test_traces_are_shortest_and_replayable():
    a, b = fixtures.pair("ma_mb_prime")
    g = async_explore(a, b, 2)
    for node in g.nodes:
        path = g.path(node)
        assert path[0] == g.initial and path[-1] == node
        assert len(g.trace(node)) == g.depth(node) == len(path) - 1
        for (src, dst), label in zip(zip(path, path[1:]), g.trace(node)):
            assert (label, dst) in g.out_edges(src)


def test_exploration_is_deterministic():
    a, b = fixtures.pair("ma_mb")
    one, two = async_explore(a, b, 2), async_explore(a, b, 2)
    assert one.nodes == two.nodes
    assert one.sorted_edges() == two.sorted_edges()


@pytest.mark.parametrize("k", [0, -1, 1.5, True, "2"])
def test_bad_bound(k):
    with pytest.raises(BoundTooSmall):
        async_explore(*fixtures.pair("maker_user"), k)


def test_state_limit(monkeypatch):
    monkeypatch.setenv(MAX_STATES_ENV, "5")
    with pytest.raises(StateLimitExceeded):
        async_explore(*fixtures.pair("ma_mb"), 3)


def test_empty_components():
    a = make_iots("A", "0", outputs=["x"])
    b = make_iots("B", "0", inputs=["x"])
    g = async_explore(a, b, 1)
    assert len(g) == 1 and g.exhaustive
    assert len(sync_product(a, b)) == 1
