import pytest

import oracle
from iocompat import (
    async_compat_bounded,
    async_deadlock_bounded,
    async_explore,
    completeness_x,
    criterion_product_left,
    fixtures,
    strong_sync,
    wac,
    wac_left,
    wac_right,
    weak_sync,
)
from iocompat.compat import async_violations, sync_violations, weakly_enabled
from iocompat.verdict import (
    BOUNDED_SEARCH,
    DEF_ASYNC_COMPAT,
    THM_COMPLETENESS,
    THM_WAC,
    WAC_LEFT,
    WAC_RIGHT,
    Status,
)

PAIRS = sorted(fixtures.PAIRS)


def test_maker_user_strong_fails_on_both_outputs_at_2_1():
    a, b = fixtures.pair("maker_user")
    found = sync_violations(a, b, "strong")
    assert {(v.location, v.action) for v in found} == {("(2,1)", "ready"), ("(2,1)", "fail")}
    verdict = strong_sync(a, b)
    assert verdict.witness.location == "(2,1)"
    assert verdict.witness.trace == ("material", "make", "ready", "material", "make")


def test_maker_user_weak_holds():
    assert weak_sync(*fixtures.pair("maker_user")).holds


@pytest.mark.parametrize("name", PAIRS)
def test_sync_checks_match_oracle(name):
    a, b = fixtures.pair(name)
    for weak in (False, True):
        ours = {v.location for v in sync_violations(a, b, "weak" if weak else "strong")}
        theirs = {f"({s},{t})" for s, t in oracle.sync_violations(a, b, weak)}
        assert ours == theirs


def test_bad_mode():
    with pytest.raises(ValueError):
        sync_violations(*fixtures.pair("maker_user"), "medium")


def test_wac_ma_mb_holds():
    a, b = fixtures.pair("ma_mb")
    assert wac_left(a, b).holds and wac_right(a, b).holds
    verdict = wac(a, b)
    assert verdict.holds
    assert verdict.justification == (WAC_LEFT, WAC_RIGHT, THM_WAC)


def test_wac_left_product_sending_states():
    g = criterion_product_left(*fixtures.pair("ma_mb"))
    names = {str(n) for n in g.nodes}
    assert {"(2,0)", "(2,1)", "(2,2)"} <= names


def test_wac_ma_mb_2_1_relies_on_own_send():
    # MB at state 1 needs makeB and then readyB> or failB> before accepting
    mb = criterion_product_left(*fixtures.pair("ma_mb")).right
    enabled = weakly_enabled(mb, mb.internals | {"readyB>", "failB>"})
    assert {"readyA", "failA"} <= enabled["1"]
    assert "readyA" not in weakly_enabled(mb, mb.internals)["1"]


def test_wac_ma_mb_prime_fails_on_fail_a():
    a, b = fixtures.pair("ma_mb_prime")
    verdict = wac_left(a, b)
    assert verdict.fails
    assert (verdict.witness.location, verdict.witness.action) == ("(2,0)", "failA")
    assert wac_right(a, b).holds
    assert wac(a, b).witness == verdict.witness


def test_wac_fig7_left_fails_at_1_0():
    verdict = wac_left(*fixtures.pair("fig7"))
    assert verdict.fails and verdict.witness.location == "(1,0)"


def test_completeness_ma_mb_prime():
    verdict = completeness_x(*fixtures.pair("ma_mb_prime"), 2)
    assert verdict.holds
    assert THM_COMPLETENESS in verdict.justification
    assert verdict.details["witnesses_left"]["2"] == "((2,ε),(0,ε))"


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_completeness_fig7_inconclusive_for_state_1(k):
    verdict = completeness_x(*fixtures.pair("fig7"), k)
    assert verdict.status is Status.INCONCLUSIVE
    assert verdict.bound == k
    assert verdict.details["unwitnessed_left"] == ["1"]
    # half-duplex, so the absence is exact; still never reported as Fails
    assert verdict.details["absence_exact"] is True


def test_completeness_uses_exploration_when_not_half_duplex():
    verdict = completeness_x(*fixtures.pair("fig4"), 2)
    assert verdict.details["method"] == "bounded-search"


@pytest.mark.parametrize("name", PAIRS)
@pytest.mark.parametrize("k", [1, 2, 3])
def test_async_violations_match_oracle(name, k):
    a, b = fixtures.pair(name)
    g = async_explore(a, b, k)
    for mode in ("weak", "strong"):
        ours = {v.location for v in async_violations(a, b, g, mode)}
        theirs = {
            f"(({sa},{'.'.join(qa) or 'ε'}),({sb},{'.'.join(qb) or 'ε'}))"
            for (sa, qa), (sb, qb) in oracle.async_violations(a, b, k, mode == "weak")
        }
        assert ours == theirs


def test_async_fig4_k1_confirmed_both_modes():
    for mode in ("strong", "weak"):
        verdict = async_compat_bounded(*fixtures.pair("fig4"), 1, mode)
        assert verdict.fails
        assert verdict.witness.location == "((1,a),(1,b))"
        assert verdict.witness.trace == ("a>", "b>")


def test_async_ma_mb_prime_weak_violation_at_k2():
    verdict = async_compat_bounded(*fixtures.pair("ma_mb_prime"), 2, "weak")
    assert verdict.fails
    assert verdict.witness.action == "failA"
    assert verdict.justification == (DEF_ASYNC_COMPAT, BOUNDED_SEARCH)


def test_async_holds_only_when_exhaustive():
    assert async_compat_bounded(*fixtures.pair("fig10"), 1).inconclusive
    assert async_compat_bounded(*fixtures.pair("fig10"), 2).holds
    assert async_compat_bounded(*fixtures.pair("ma_mb"), 3).inconclusive


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_fig7_no_violation_at_any_bound(k):
    a, b = fixtures.pair("fig7")
    assert async_compat_bounded(a, b, k, "weak").holds
    assert async_compat_bounded(a, b, k, "strong").holds


def test_async_deadlocks_exclude_horizon():
    a, b = fixtures.pair("ex63_send")
    g = async_explore(a, b, 1)
    assert g.horizon
    report = async_deadlock_bounded(a, b, 1, graph=g)
    assert report.empty and report.exhaustive is False


@pytest.mark.parametrize("name", PAIRS)
@pytest.mark.parametrize("k", [1, 2, 3])
def test_async_deadlocks_match_oracle(name, k):
    a, b = fixtures.pair(name)
    ours = set(async_deadlock_bounded(a, b, k).locations())
    theirs = {
        f"(({sa},{'.'.join(qa) or 'ε'}),({sb},{'.'.join(qb) or 'ε'}))"
        for (sa, qa), (sb, qb) in oracle.async_deadlocks(a, b, k)
    }
    assert ours == theirs
