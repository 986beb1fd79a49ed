"""Reachable synchronous products and bounded asynchronous exploration."""

from __future__ import annotations

import os
from collections import deque
from collections.abc import Callable, Hashable, Iterable
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import BoundTooSmall, StateLimitExceeded
from .model import (
    Iots,
    SharedProfile,
    async_composable,
    composable,
    decorate,
    rename_outputs,
    state_sort_key,
)

EPSILON = "ε"
MAX_STATES_ENV = "IOTS_COMPAT_MAX_STATES"
DEFAULT_MAX_STATES = 1_000_000


def max_states() -> int:
    raw = os.environ.get(MAX_STATES_ENV)
    if not raw:
        return DEFAULT_MAX_STATES
    return int(float(raw))


class SyncState(NamedTuple):
    left: str
    right: str

    def __str__(self) -> str:
        return f"({self.left},{self.right})"


def format_queue(queue: tuple[str, ...]) -> str:
    """Head first, matching dequeue-on-the-left."""
    return ".".join(queue) if queue else EPSILON


class AsyncConfig(NamedTuple):
    left_state: str
    left_queue: tuple[str, ...]
    right_state: str
    right_queue: tuple[str, ...]

    def __str__(self) -> str:
        return (
            f"(({self.left_state},{format_queue(self.left_queue)}),"
            f"({self.right_state},{format_queue(self.right_queue)}))"
        )

    @property
    def both_nonempty(self) -> bool:
        return bool(self.left_queue) and bool(self.right_queue)


def node_sort_key(node) -> tuple:
    if isinstance(node, AsyncConfig):
        return (
            state_sort_key(node.left_state),
            node.left_queue,
            state_sort_key(node.right_state),
            node.right_queue,
        )
    return (state_sort_key(node.left), state_sort_key(node.right))


Edge = tuple[Hashable, str, Hashable]


@dataclass
class Graph:
    """Reachable fragment of a transition system built by breadth-first search.

    ``nodes`` is in discovery order, so the parent pointers always give a
    shortest trace from ``initial``.
    """

    initial: Hashable
    nodes: list = field(default_factory=list)
    edges: list[Edge] = field(default_factory=list)
    parent: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self._out: dict = {}
        self._node_set: set = set()

    def __contains__(self, node) -> bool:
        return node in self._node_set

    def __len__(self) -> int:
        return len(self.nodes)

    def out_edges(self, node) -> list[tuple[str, Hashable]]:
        return self._out.get(node, [])

    def out_degree(self, node) -> int:
        return len(self._out.get(node, []))

    def depth(self, node) -> int:
        return len(self.trace(node))

    def trace(self, node) -> list[str]:
        """Action labels along the BFS-shortest path from the initial node."""
        labels = []
        while node != self.initial:
            node, label = self.parent[node]
            labels.append(label)
        labels.reverse()
        return labels

    def path(self, node) -> list:
        nodes = [node]
        while node != self.initial:
            node, _ = self.parent[node]
            nodes.append(node)
        nodes.reverse()
        return nodes

    def sorted_nodes(self) -> list:
        return sorted(self.nodes, key=node_sort_key)

    def sorted_edges(self) -> list[Edge]:
        return sorted(
            self.edges, key=lambda e: (node_sort_key(e[0]), e[1], node_sort_key(e[2]))
        )

    def _explore(self, successors: Callable[[Hashable], Iterable[tuple[str, Hashable]]]) -> None:
        limit = max_states()
        self._add_node(self.initial, limit)
        frontier = deque([self.initial])
        while frontier:
            node = frontier.popleft()
            out = []
            for label, target in successors(node):
                out.append((label, target))
                self.edges.append((node, label, target))
                if target not in self._node_set:
                    self._add_node(target, limit)
                    self.parent[target] = (node, label)
                    frontier.append(target)
            self._out[node] = out

    def _add_node(self, node, limit: int) -> None:
        if len(self.nodes) >= limit:
            raise StateLimitExceeded(limit)
        self.nodes.append(node)
        self._node_set.add(node)


@dataclass
class SyncGraph(Graph):
    """Reachable part of the synchronous product of two components."""

    left: Iots | None = None
    right: Iots | None = None
    profile: SharedProfile | None = None
    inputs: frozenset[str] = frozenset()
    outputs: frozenset[str] = frozenset()
    internals: frozenset[str] = frozenset()

    def locally_reachable_left(self) -> set[str]:
        return {n.left for n in self.nodes}

    def locally_reachable_right(self) -> set[str]:
        return {n.right for n in self.nodes}


def _sync_successors(a: Iots, b: Iots, shared: frozenset[str]):
    def successors(node: SyncState):
        s, t = node
        moves = []
        for x, s2 in a.successors(s):
            if x in shared:
                for t2 in b.targets(t, x):
                    moves.append((x, SyncState(s2, t2)))
            else:
                moves.append((x, SyncState(s2, t)))
        for x, t2 in b.successors(t):
            if x not in shared:
                moves.append((x, SyncState(s, t2)))
        moves.sort(key=lambda m: (m[0], node_sort_key(m[1])))
        return moves

    return successors


def sync_product(a: Iots, b: Iots) -> SyncGraph:
    """Reachable fragment of ``a ⊗ b``; shared actions become internal."""
    profile = composable(a, b)
    shared = profile.shared
    graph = SyncGraph(
        initial=SyncState(a.initial, b.initial),
        left=a,
        right=b,
        profile=profile,
        inputs=(a.inputs | b.inputs) - shared,
        outputs=(a.outputs | b.outputs) - shared,
        internals=a.internals | b.internals | shared,
    )
    graph._explore(_sync_successors(a, b, shared))
    return graph


def criterion_product_left(a: Iots, b: Iots) -> SyncGraph:
    """``a ⊗ b▷``: b's outputs towards a become free enqueue outputs."""
    profile = async_composable(a, b)
    return sync_product(a, rename_outputs(b, profile.out_ba))


def criterion_product_right(a: Iots, b: Iots) -> SyncGraph:
    """``a▷ ⊗ b``: a's outputs towards b become free enqueue outputs."""
    profile = async_composable(a, b)
    return sync_product(rename_outputs(a, profile.out_ab), b)


# Rule tags attached to asynchronous edges.
FREE_LEFT = "free-left"
FREE_RIGHT = "free-right"
DEQUEUE_LEFT = "dequeue-left-queue"
DEQUEUE_RIGHT = "dequeue-right-queue"
ENQUEUE_LEFT = "enqueue-left"
ENQUEUE_RIGHT = "enqueue-right"


@dataclass
class AsyncGraph(Graph):
    """Bounded reachable fragment of ``Ω(a) ⊗ Ω(b)``.

    ``horizon`` holds every configuration at which an enqueue was possible
    but suppressed because the queue already had ``bound`` messages;
    ``suppressed`` lists those enqueue labels per configuration. Edge
    ``rules`` record which composition clause produced each edge.
    """

    left: Iots | None = None
    right: Iots | None = None
    profile: SharedProfile | None = None
    bound: int = 1
    horizon: set = field(default_factory=set)
    suppressed: dict = field(default_factory=dict)
    rules: dict = field(default_factory=dict)

    @property
    def exhaustive(self) -> bool:
        return not self.horizon


def async_successors(a: Iots, b: Iots, profile: SharedProfile, bound: int | None):
    """Successor function of ``Ω(a) ⊗ Ω(b)`` with queues capped at ``bound``.

    Returns ``successors(config) -> (moves, suppressed)`` where ``moves`` is a
    list of ``(label, target, rule)``. ``bound=None`` means uncapped.
    """
    out_ab, out_ba, shared = profile.out_ab, profile.out_ba, profile.shared

    def successors(c: AsyncConfig):
        sa, qa, sb, qb = c
        moves = []
        suppressed = []
        for x, sa2 in a.successors(sa):
            if x not in shared:
                moves.append((x, AsyncConfig(sa2, qa, sb, qb), FREE_LEFT))
            elif x in out_ab:
                if bound is not None and len(qa) >= bound:
                    suppressed.append(decorate(x))
                else:
                    moves.append((decorate(x), AsyncConfig(sa2, qa + (x,), sb, qb), ENQUEUE_LEFT))
            elif qb and qb[0] == x:
                # x ∈ out_ba, consumed from the head of b's queue
                moves.append((x, AsyncConfig(sa2, qa, sb, qb[1:]), DEQUEUE_RIGHT))
        for x, sb2 in b.successors(sb):
            if x not in shared:
                moves.append((x, AsyncConfig(sa, qa, sb2, qb), FREE_RIGHT))
            elif x in out_ba:
                if bound is not None and len(qb) >= bound:
                    suppressed.append(decorate(x))
                else:
                    moves.append((decorate(x), AsyncConfig(sa, qa, sb2, qb + (x,)), ENQUEUE_RIGHT))
            elif qa and qa[0] == x:
                moves.append((x, AsyncConfig(sa, qa[1:], sb2, qb), DEQUEUE_LEFT))
        moves.sort(key=lambda m: (m[0], node_sort_key(m[1])))
        return moves, sorted(set(suppressed))

    return successors


def async_explore(a: Iots, b: Iots, k: int) -> AsyncGraph:
    """Breadth-first exploration of the asynchronous composition, queues ≤ k."""
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise BoundTooSmall(k)
    profile = async_composable(a, b)
    graph = AsyncGraph(
        initial=AsyncConfig(a.initial, (), b.initial, ()),
        left=a,
        right=b,
        profile=profile,
        bound=k,
    )
    step = async_successors(a, b, profile, k)

    def successors(c):
        moves, suppressed = step(c)
        if suppressed:
            graph.horizon.add(c)
            graph.suppressed[c] = suppressed
        for label, target, rule in moves:
            graph.rules[(c, label, target)] = rule
        return [(label, target) for label, target, _ in moves]

    graph._explore(successors)
    return graph
