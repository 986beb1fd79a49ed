"""Structural checks: closures, I/O-separation, half-duplex, deadlocks."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass, field

from . import verdict as v
from .compose import Graph, criterion_product_left, criterion_product_right, sync_product
from .errors import UnknownState
from .model import Iots, async_composable, state_sort_key
from .verdict import Verdict, Witness

LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True)
class ClosureSet:
    origin: str
    allowed: frozenset[str]
    members: frozenset[str]

    def __contains__(self, state: str) -> bool:
        return state in self.members

    def enabling(self, component: Iots, action: str) -> list[str]:
        """Members with an outgoing ``action`` transition, sorted."""
        return sorted(
            (s for s in self.members if action in component.enabled(s)), key=state_sort_key
        )


def closure(a: Iots, s: str, allowed: Iterable[str]) -> ClosureSet:
    """All states reachable from ``s`` using only ``allowed`` labels (incl. ``s``)."""
    if s not in a.states:
        raise UnknownState(s)
    allowed = frozenset(allowed)
    seen = {s}
    stack = [s]
    while stack:
        u = stack.pop()
        for x, w in a.successors(u):
            if x in allowed and w not in seen:
                seen.add(w)
                stack.append(w)
    return ClosureSet(s, allowed, frozenset(seen))


def _bfs(a: Iots) -> tuple[list[str], dict[str, tuple[str, str]]]:
    order = [a.initial]
    parent: dict[str, tuple[str, str]] = {}
    seen = {a.initial}
    frontier = deque([a.initial])
    while frontier:
        s = frontier.popleft()
        for x, t in a.successors(s):
            if t not in seen:
                seen.add(t)
                parent[t] = (s, x)
                order.append(t)
                frontier.append(t)
    return order, parent


def _local_trace(a: Iots, parent: dict, state: str) -> tuple[str, ...]:
    labels = []
    while state != a.initial:
        state, x = parent[state]
        labels.append(x)
    return tuple(reversed(labels))


def io_separated(a: Iots) -> Verdict:
    """No reachable state offers both an output and an input."""
    order, parent = _bfs(a)
    for s in order:
        enabled = a.enabled(s)
        outs = sorted(enabled & a.outputs)
        ins = sorted(enabled & a.inputs)
        if outs and ins:
            return v.fails(
                Witness(str(s), outs[0], _local_trace(a, parent, s), detail=f"input {ins[0]}"),
                v.DEF_IOTS_SEP,
            )
    return v.holds(v.DEF_IOTS_SEP)


def obs_io_separated(a: Iots) -> Verdict:
    """No reachable state offers an output while an input is internally reachable."""
    order, parent = _bfs(a)
    for s in order:
        outs = sorted(a.enabled(s) & a.outputs)
        if not outs:
            continue
        reach = closure(a, s, a.internals)
        for u in sorted(reach.members, key=state_sort_key):
            ins = sorted(a.enabled(u) & a.inputs)
            if ins:
                detail = f"input {ins[0]}" + ("" if u == s else f" after internal moves to {u}")
                return v.fails(
                    Witness(str(s), outs[0], _local_trace(a, parent, s), detail=detail),
                    v.DEF_OBS_IOTS_SEP,
                )
    return v.holds(v.DEF_OBS_IOTS_SEP)


def half_duplex_check(a: Iots, b: Iots) -> Verdict:
    """Decide the half-duplex property on the synchronous product alone.

    Fails at the first reachable product state where ``a`` can send to ``b``
    and ``b`` can send to ``a``; two such sends fill both queues at once.
    """
    profile = async_composable(a, b)
    graph = sync_product(a, b)
    for node in graph.nodes:
        sends_ab = sorted(a.enabled(node.left) & profile.out_ab)
        sends_ba = sorted(b.enabled(node.right) & profile.out_ba)
        if sends_ab and sends_ba:
            return v.fails(
                Witness(
                    str(node),
                    sends_ab[0],
                    tuple(graph.trace(node)),
                    detail=f"concurrent send {sends_ba[0]}",
                ),
                v.LEM_CRUCIAL,
            )
    return v.holds(v.LEM_CRUCIAL)


@dataclass(frozen=True)
class DeadlockEntry:
    location: str
    trace: tuple[str, ...]


@dataclass
class DeadlockReport:
    """Out-degree-0 nodes of a graph, each with a shortest witness trace.

    For bounded asynchronous explorations ``bound`` is set and ``exhaustive``
    tells whether the exploration hit the queue bound anywhere.
    """

    deadlocked: list[DeadlockEntry] = field(default_factory=list)
    bound: int | None = None
    exhaustive: bool | None = None

    @property
    def empty(self) -> bool:
        return not self.deadlocked

    @property
    def horizon_empty(self) -> bool | None:
        return self.exhaustive

    def locations(self) -> list[str]:
        return [e.location for e in self.deadlocked]

    def to_dict(self) -> dict:
        d: dict = {"deadlocked": [{"location": e.location, "trace": list(e.trace)} for e in self.deadlocked]}
        if self.bound is not None:
            d["bound"] = self.bound
            d["exhaustive"] = self.exhaustive
        return d


def graph_deadlocks(graph: Graph, exclude: Iterable = ()) -> list[DeadlockEntry]:
    skip = set(exclude)
    return [
        DeadlockEntry(str(n), tuple(graph.trace(n)))
        for n in graph.nodes
        if graph.out_degree(n) == 0 and n not in skip
    ]


def sync_deadlocks(a: Iots, b: Iots) -> DeadlockReport:
    return DeadlockReport(graph_deadlocks(sync_product(a, b)))


def autonomous_df(a: Iots, b: Iots, side: str = LEFT) -> Verdict:
    """Every reachable state of the criterion product on ``side`` can move
    without receiving a message from the partner.

    For ``left`` the product is ``a ⊗ b▷`` and moves labelled by inputs of
    ``a`` that ``b`` sends are not counted; ``right`` is the mirror image.
    """
    profile = async_composable(a, b)
    if side == LEFT:
        graph = criterion_product_left(a, b)
        excluded = profile.out_ba
        tag = "left"
    elif side == RIGHT:
        graph = criterion_product_right(a, b)
        excluded = profile.out_ab
        tag = "right"
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    for node in graph.nodes:
        if not any(label not in excluded for label, _ in graph.out_edges(node)):
            return v.fails(
                Witness(str(node), None, tuple(graph.trace(node)), detail=f"stuck in {tag} product"),
                v.DEF_AUTONOMOUS_DF,
            )
    return v.holds(v.DEF_AUTONOMOUS_DF)
