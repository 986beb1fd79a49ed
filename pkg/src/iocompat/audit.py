"""Independent checks of explored graphs against the reachability invariants.

The replay audit rebuilds successors by composing the two queue-equipped
components with the generic synchronous-product rule, instead of the
clause-by-clause table used by :func:`iocompat.compose.async_explore`.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable

from .compose import (
    AsyncConfig,
    AsyncGraph,
    criterion_product_left,
    criterion_product_right,
    sync_product,
)
from .model import Iots, decorate


def omega_moves(component: Iots, messages: frozenset[str], state: str, queue: tuple[str, ...]):
    """Transitions of ``component`` equipped with an output queue for ``messages``.

    Yields ``(label, (state', queue'))``. Messages are written as enqueue
    actions ``m>`` on the right of the queue and offered as outputs ``m``
    only when they are at its head.
    """
    for x, t in component.successors(state):
        if x in messages:
            yield decorate(x), (t, queue + (x,))
        else:
            yield x, (t, queue)
    if queue:
        yield queue[0], (state, queue[1:])


def omega_product_moves(a: Iots, b: Iots, out_ab: frozenset[str], out_ba: frozenset[str], c: AsyncConfig):
    """Successors of ``c`` in ``Ω(a) ⊗ Ω(b)``, with enqueues left uncapped."""
    moves_a = list(omega_moves(a, out_ab, c.left_state, c.left_queue))
    moves_b = list(omega_moves(b, out_ba, c.right_state, c.right_queue))
    labels_a = a.actions | {decorate(x) for x in out_ab}
    labels_b = b.actions | {decorate(x) for x in out_ba}
    shared = labels_a & labels_b
    result = set()
    for x, (sa, qa) in moves_a:
        if x not in shared:
            result.add((x, AsyncConfig(sa, qa, c.right_state, c.right_queue)))
        else:
            for y, (sb, qb) in moves_b:
                if y == x:
                    result.add((x, AsyncConfig(sa, qa, sb, qb)))
    for y, (sb, qb) in moves_b:
        if y not in shared:
            result.add((y, AsyncConfig(c.left_state, c.left_queue, sb, qb)))
    return result


def replay_audit(graph: AsyncGraph) -> list[str]:
    """Compare every explored node's edges with the independent successor relation.

    Returns human-readable discrepancies; an empty list means the graph is
    sound, complete up to the bound, and its horizon is exactly right.
    """
    a, b, profile, k = graph.left, graph.right, graph.profile, graph.bound
    problems = []
    for c in graph.nodes:
        if len(c.left_queue) > k or len(c.right_queue) > k:
            problems.append(f"{c}: queue longer than bound {k}")
        if not set(c.left_queue) <= profile.out_ab or not set(c.right_queue) <= profile.out_ba:
            problems.append(f"{c}: queue holds a foreign message")
        expected = omega_product_moves(a, b, profile.out_ab, profile.out_ba, c)
        within = {
            (x, t) for x, t in expected if len(t.left_queue) <= k and len(t.right_queue) <= k
        }
        cut = expected - within
        actual = set(graph.out_edges(c))
        if len(actual) != len(graph.out_edges(c)):
            problems.append(f"{c}: duplicate edges")
        for x, t in sorted(within - actual, key=str):
            problems.append(f"{c}: missing edge {x} -> {t}")
        for x, t in sorted(actual - within, key=str):
            problems.append(f"{c}: unjustified edge {x} -> {t}")
        if bool(cut) != (c in graph.horizon):
            problems.append(f"{c}: horizon flag {c in graph.horizon} but {len(cut)} cut enqueues")
    return problems


def _word_path(
    component: Iots,
    starts: Iterable[str],
    target: str,
    word: tuple[str, ...],
    messages: frozenset[str],
    others: frozenset[str] | None,
) -> bool:
    """Is there a path from some start to ``target`` whose ``messages``
    transitions spell ``word`` exactly, all other steps drawn from ``others``
    (``None`` means any non-message label)?"""
    m = len(word)
    seen = {(s, 0) for s in starts}
    frontier = deque(seen)
    while frontier:
        s, i = frontier.popleft()
        if s == target and i == m:
            return True
        for x, t in component.successors(s):
            if x in messages:
                if i < m and x == word[i]:
                    nxt = (t, i + 1)
                else:
                    continue
            elif others is None or x in others:
                nxt = (t, i)
            else:
                continue
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return False


def property_q_violations(graph: AsyncGraph) -> list[str]:
    """Configurations breaking the relation to the two criterion products."""
    a, b, profile = graph.left, graph.right, graph.profile
    left = set(criterion_product_left(a, b).nodes)
    right = set(criterion_product_right(a, b).nodes)
    starts_a: dict[str, list[str]] = {}
    for r, t in left:
        starts_a.setdefault(t, []).append(r)
    starts_b: dict[str, list[str]] = {}
    for s, r in right:
        starts_b.setdefault(s, []).append(r)
    problems = []
    for c in graph.nodes:
        sa, qa, sb, qb = c
        if not qa:
            ok_a = (sa, sb) in left
        else:
            ok_a = _word_path(a, starts_a.get(sb, ()), sa, qa, profile.out_ab, None)
        if not ok_a:
            problems.append(f"Q_A fails at {c}")
        if not qb:
            ok_b = (sa, sb) in right
        else:
            ok_b = _word_path(b, starts_b.get(sa, ()), sb, qb, profile.out_ba, None)
        if not ok_b:
            problems.append(f"Q_B fails at {c}")
    return problems


def property_p_violations(graph: AsyncGraph) -> list[str]:
    """Configurations matching none of the three half-duplex shapes."""
    a, b, profile = graph.left, graph.right, graph.profile
    sync = set(sync_product(a, b).nodes)
    starts_a: dict[str, list[str]] = {}
    starts_b: dict[str, list[str]] = {}
    for r, t in sync:
        starts_a.setdefault(t, []).append(r)
        starts_b.setdefault(r, []).append(t)
    problems = []
    for c in graph.nodes:
        sa, qa, sb, qb = c
        if not qa and not qb:
            ok = (sa, sb) in sync
        elif qa and not qb:
            ok = _word_path(a, starts_a.get(sb, ()), sa, qa, profile.out_ab, profile.free_a)
        elif qb and not qa:
            ok = _word_path(b, starts_b.get(sa, ()), sb, qb, profile.out_ba, profile.free_b)
        else:
            ok = False
        if not ok:
            problems.append(f"P fails at {c}")
    return problems


def empty_queue_embedding_violations(graph: AsyncGraph) -> list[str]:
    """Synchronous product states missing from the exploration with empty queues."""
    sync = sync_product(graph.left, graph.right)
    return [
        f"{n} not reached with empty queues"
        for n in sync.nodes
        if AsyncConfig(n.left, (), n.right, ()) not in graph
    ]

