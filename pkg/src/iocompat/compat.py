"""Synchronous, criterion-based and bounded asynchronous compatibility checks."""

from __future__ import annotations

from dataclasses import dataclass

from . import verdict as v
from .analysis import DeadlockReport, closure, graph_deadlocks, half_duplex_check
from .compose import (
    AsyncConfig,
    AsyncGraph,
    SyncGraph,
    async_explore,
    criterion_product_left,
    criterion_product_right,
    sync_product,
)
from .model import Iots, async_composable, composable, decorate, state_sort_key
from .verdict import Verdict, Witness

STRONG = "strong"
WEAK = "weak"
LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True)
class CompatViolation:
    """A sender's enabled output the receiver cannot take (at once, or at all)."""

    location: str
    sender: str
    action: str
    kind: str
    trace: tuple[str, ...] = ()

    def witness(self) -> Witness:
        receiver = RIGHT if self.sender == LEFT else LEFT
        return Witness(
            self.location,
            self.action,
            self.trace,
            detail=f"{self.sender} sends, {receiver} cannot receive ({self.kind})",
        )


def _check_mode(mode: str) -> None:
    if mode not in (STRONG, WEAK):
        raise ValueError(f"mode must be 'strong' or 'weak', not {mode!r}")


def weakly_enabled(component: Iots, allowed: frozenset[str]) -> dict[str, frozenset[str]]:
    """Per state, every action enabled somewhere in its ``allowed``-closure."""
    table = {}
    for s in component.states:
        acts: set[str] = set()
        for u in closure(component, s, allowed).members:
            acts |= component.enabled(u)
        table[s] = frozenset(acts)
    return table


def _product_violations(
    graph: SyncGraph,
    left: Iots,
    right: Iots,
    left_sends: frozenset[str],
    right_sends: frozenset[str],
    left_accepts: dict[str, frozenset[str]] | None,
    right_accepts: dict[str, frozenset[str]] | None,
    kind: str,
    first_only: bool,
) -> list[CompatViolation]:
    """Scan a product in BFS order; ``*_accepts`` None means "immediately enabled"."""
    found = []
    for node in graph.nodes:
        s, t = node
        checks = []
        if left_sends:
            can = right_accepts[t] if right_accepts is not None else right.enabled(t)
            checks.append((LEFT, sorted(left.enabled(s) & left_sends), can))
        if right_sends:
            can = left_accepts[s] if left_accepts is not None else left.enabled(s)
            checks.append((RIGHT, sorted(right.enabled(t) & right_sends), can))
        for sender, sends, can in checks:
            for x in sends:
                if x not in can:
                    found.append(
                        CompatViolation(str(node), sender, x, kind, tuple(graph.trace(node)))
                    )
                    if first_only:
                        return found
    return found


def sync_violations(
    a: Iots, b: Iots, mode: str = STRONG, first_only: bool = False
) -> list[CompatViolation]:
    _check_mode(mode)
    profile = composable(a, b)
    graph = sync_product(a, b)
    if mode == STRONG:
        left_acc = right_acc = None
    else:
        left_acc = weakly_enabled(a, a.internals)
        right_acc = weakly_enabled(b, b.internals)
    return _product_violations(
        graph, a, b, profile.out_ab, profile.out_ba, left_acc, right_acc, mode, first_only
    )


def strong_sync(a: Iots, b: Iots) -> Verdict:
    found = sync_violations(a, b, STRONG, first_only=True)
    if found:
        return v.fails(found[0].witness(), v.DEF_STRONG_SYNC)
    return v.holds(v.DEF_STRONG_SYNC)


def weak_sync(a: Iots, b: Iots) -> Verdict:
    found = sync_violations(a, b, WEAK, first_only=True)
    if found:
        return v.fails(found[0].witness(), v.DEF_WEAK_SYNC)
    return v.holds(v.DEF_WEAK_SYNC)


def wac_left(a: Iots, b: Iots) -> Verdict:
    """In ``a ⊗ b▷`` every output of ``a`` towards ``b`` is eventually accepted by
    ``b▷`` after internal moves and enqueues of its own messages."""
    profile = async_composable(a, b)
    graph = criterion_product_left(a, b)
    b_ren = graph.right
    allowed = b.internals | {decorate(x) for x in profile.out_ba}
    found = _product_violations(
        graph, a, b_ren, profile.out_ab, frozenset(), None,
        weakly_enabled(b_ren, allowed), WEAK,
        first_only=True,
    )
    if found:
        return v.fails(found[0].witness(), v.WAC_LEFT)
    return v.holds(v.WAC_LEFT)


def wac_right(a: Iots, b: Iots) -> Verdict:
    """Mirror of :func:`wac_left` on ``a▷ ⊗ b``."""
    profile = async_composable(a, b)
    graph = criterion_product_right(a, b)
    a_ren = graph.left
    allowed = a.internals | {decorate(x) for x in profile.out_ab}
    found = _product_violations(
        graph, a_ren, b, frozenset(), profile.out_ba,
        weakly_enabled(a_ren, allowed), None, WEAK,
        first_only=True,
    )
    if found:
        return v.fails(found[0].witness(), v.WAC_RIGHT)
    return v.holds(v.WAC_RIGHT)


def wac(a: Iots, b: Iots) -> Verdict:
    left = wac_left(a, b)
    right = wac_right(a, b)
    if left.holds and right.holds:
        return v.holds(v.WAC_LEFT, v.WAC_RIGHT, v.THM_WAC)
    failed = left if left.fails else right
    return v.fails(failed.witness, *failed.justification)


def _sends_of(component: Iots, messages: frozenset[str]) -> list[str]:
    return sorted(
        (s for s in component.states if component.enabled(s) & messages), key=state_sort_key
    )


def completeness_x(
    a: Iots,
    b: Iots,
    k: int,
    *,
    graph: AsyncGraph | None = None,
    half_duplex: Verdict | None = None,
) -> Verdict:
    """Look for each sending state, with an empty own queue, in the async system.

    Candidates are states of ``a`` that can send to ``b`` and are locally
    reachable in ``a ⊗ b▷`` (mirror for ``b``). When the system is half-duplex
    the empty-queue local reachability is read off the synchronous product,
    which is exact; otherwise the bounded exploration at ``k`` is searched.
    Missing states never make the verdict fail, only inconclusive.
    """
    profile = async_composable(a, b)
    cand_a = set(criterion_product_left(a, b).locally_reachable_left())
    cand_b = set(criterion_product_right(a, b).locally_reachable_right())
    cand_a = [s for s in _sends_of(a, profile.out_ab) if s in cand_a]
    cand_b = [s for s in _sends_of(b, profile.out_ba) if s in cand_b]

    if half_duplex is None:
        half_duplex = half_duplex_check(a, b)

    found_a: dict[str, str] = {}
    found_b: dict[str, str] = {}
    if half_duplex.holds:
        sync = sync_product(a, b)
        for node in sync.nodes:
            found_a.setdefault(node.left, str(AsyncConfig(node.left, (), node.right, ())))
            found_b.setdefault(node.right, str(AsyncConfig(node.left, (), node.right, ())))
        method = "sync-product"
        exact = True
        justification = (v.THM_COMPLETENESS, v.LEM_CRUCIAL, v.LEM_EMPTY_QUEUE)
    else:
        if graph is None:
            graph = async_explore(a, b, k)
        for c in graph.nodes:
            if not c.left_queue:
                found_a.setdefault(c.left_state, str(c))
            if not c.right_queue:
                found_b.setdefault(c.right_state, str(c))
        method = "bounded-search"
        exact = graph.exhaustive
        justification = (v.THM_COMPLETENESS, v.BOUNDED_SEARCH)

    missing_a = [s for s in cand_a if s not in found_a]
    missing_b = [s for s in cand_b if s not in found_b]
    details = {
        "method": method,
        "witnesses_left": {s: found_a[s] for s in cand_a if s in found_a},
        "witnesses_right": {s: found_b[s] for s in cand_b if s in found_b},
    }
    if not missing_a and not missing_b:
        return v.holds(*justification, bound=k, details=details)
    details["unwitnessed_left"] = missing_a
    details["unwitnessed_right"] = missing_b
    details["absence_exact"] = exact
    return v.inconclusive(k, *justification, exhaustive=exact, details=details)


def async_violations(
    a: Iots, b: Iots, graph: AsyncGraph, mode: str = WEAK, first_only: bool = False
) -> list[CompatViolation]:
    """Queue heads the receiving component cannot take, in BFS order.

    Whether a receiver can take a message depends on its control state only,
    since its own enqueues never block; so the weak test is a finite closure
    over internal actions and its own outgoing messages.
    """
    _check_mode(mode)
    profile = graph.profile
    if mode == WEAK:
        right_acc = weakly_enabled(b, b.internals | profile.out_ba)
        left_acc = weakly_enabled(a, a.internals | profile.out_ab)
    found = []
    for c in graph.nodes:
        for sender, queue, recv_state, receiver, acc in (
            (LEFT, c.left_queue, c.right_state, b, right_acc if mode == WEAK else None),
            (RIGHT, c.right_queue, c.left_state, a, left_acc if mode == WEAK else None),
        ):
            if not queue:
                continue
            head = queue[0]
            can = acc[recv_state] if acc is not None else receiver.enabled(recv_state)
            if head not in can:
                found.append(CompatViolation(str(c), sender, head, mode, tuple(graph.trace(c))))
                if first_only:
                    return found
    return found


def async_compat_bounded(
    a: Iots, b: Iots, k: int, mode: str = WEAK, *, graph: AsyncGraph | None = None
) -> Verdict:
    """Search the bounded asynchronous system for a confirmed violation.

    A violation found is genuine (the configuration is really reachable).
    Without one the verdict is Holds only if no enqueue was ever cut off.
    """
    _check_mode(mode)
    if graph is None:
        graph = async_explore(a, b, k)
    found = async_violations(a, b, graph, mode, first_only=True)
    just = (v.DEF_ASYNC_COMPAT, v.BOUNDED_SEARCH)
    if found:
        return v.fails(found[0].witness(), *just, bound=k, exhaustive=graph.exhaustive)
    if graph.exhaustive:
        return v.holds(*just, bound=k, exhaustive=True)
    return v.inconclusive(
        k, *just, exhaustive=False, details={"horizon": len(graph.horizon), "configs": len(graph)}
    )


def async_deadlock_bounded(
    a: Iots, b: Iots, k: int, *, graph: AsyncGraph | None = None
) -> DeadlockReport:
    """Configurations without any move; cut-off enqueues still count as moves."""
    if graph is None:
        graph = async_explore(a, b, k)
    return DeadlockReport(
        graph_deadlocks(graph, exclude=graph.horizon), bound=k, exhaustive=graph.exhaustive
    )
