"""I/O-transition systems, their alphabets and the output-renaming construction."""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property

from .errors import (
    DecorationClash,
    NotAnOutput,
    NotComposable,
    ValidationError,
    Violation,
)

#: Marker appended to an action name to obtain its enqueue variant.
DECORATION = ">"

_NAME_RE = re.compile(r"[A-Za-z0-9_]+")
_ACTION_RE = re.compile(r"[A-Za-z0-9_]+>?")

INPUT = "input"
OUTPUT = "output"
INTERNAL = "internal"


def decorate(action: str) -> str:
    if is_decorated(action):
        raise ValueError(f"action {action!r} is already decorated")
    return action + DECORATION


def undecorate(action: str) -> str:
    return action[: -len(DECORATION)] if is_decorated(action) else action


def is_decorated(action: str) -> bool:
    return action.endswith(DECORATION)


def is_valid_action(action: str) -> bool:
    return isinstance(action, str) and _ACTION_RE.fullmatch(action) is not None


def is_valid_state(state: str) -> bool:
    return isinstance(state, str) and _NAME_RE.fullmatch(state) is not None


Transition = tuple[str, str, str]


@dataclass(frozen=True)
class Iots:
    """A finite I/O-transition system.

    States and actions are plain strings. Nondeterminism is allowed: several
    transitions may share source and label. Build instances through
    :func:`validate` (or :func:`make_iots`) so the invariants are checked.
    """

    name: str
    states: frozenset[str]
    initial: str
    inputs: frozenset[str]
    outputs: frozenset[str]
    internals: frozenset[str]
    transitions: frozenset[Transition] = field(default_factory=frozenset)

    @property
    def actions(self) -> frozenset[str]:
        return self.inputs | self.outputs | self.internals

    def kind_of(self, action: str) -> str | None:
        if action in self.inputs:
            return INPUT
        if action in self.outputs:
            return OUTPUT
        if action in self.internals:
            return INTERNAL
        return None

    @cached_property
    def _succ(self) -> dict[str, tuple[tuple[str, str], ...]]:
        table: dict[str, list[tuple[str, str]]] = {s: [] for s in self.states}
        for src, act, dst in self.transitions:
            table[src].append((act, dst))
        return {s: tuple(sorted(edges)) for s, edges in table.items()}

    def successors(self, state: str) -> tuple[tuple[str, str], ...]:
        """Outgoing ``(action, target)`` pairs of ``state``, sorted."""
        return self._succ[state]

    def enabled(self, state: str) -> frozenset[str]:
        return frozenset(a for a, _ in self._succ[state])

    def targets(self, state: str, action: str) -> list[str]:
        return [t for a, t in self._succ[state] if a == action]

    @cached_property
    def reachable(self) -> frozenset[str]:
        seen = {self.initial}
        stack = [self.initial]
        while stack:
            s = stack.pop()
            for _, t in self._succ[s]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)

    def sorted_states(self) -> list[str]:
        return sorted(self.states, key=state_sort_key)

    def sorted_transitions(self) -> list[Transition]:
        return sorted(
            self.transitions, key=lambda t: (state_sort_key(t[0]), t[1], state_sort_key(t[2]))
        )

    def __repr__(self) -> str:
        return (
            f"Iots({self.name!r}, states={len(self.states)}, "
            f"transitions={len(self.transitions)})"
        )


def state_sort_key(state: str) -> tuple:
    """Numeric-aware ordering so that ``"10"`` sorts after ``"2"``."""
    return tuple(
        (0, int(part), "") if part.isdigit() else (1, 0, part)
        for part in re.findall(r"\d+|\D+", state)
    ) or ((1, 0, ""),)


def validate(raw: Mapping) -> Iots:
    """Check a raw component description and build an :class:`Iots`.

    ``raw`` is a mapping with keys ``name``, ``initial``, ``inputs``,
    ``outputs``, ``internals``, ``transitions`` and optionally ``states``.
    When ``states`` is omitted, the state set is inferred from the initial
    state and the transitions. All violations are collected before raising.
    """
    name = str(raw.get("name") or "anonymous")
    inputs = frozenset(raw.get("inputs", ()))
    outputs = frozenset(raw.get("outputs", ()))
    internals = frozenset(raw.get("internals", ()))
    transitions = frozenset(tuple(t) for t in raw.get("transitions", ()))
    initial = raw.get("initial")
    declared_states = raw.get("states")

    violations: list[Violation] = []

    for action in sorted(inputs | outputs | internals):
        if not is_valid_action(action):
            violations.append(Violation("InvalidName", f"bad action name {action!r}"))

    for left, right, label in (
        (inputs, outputs, "input and output"),
        (inputs, internals, "input and internal"),
        (outputs, internals, "output and internal"),
    ):
        for action in sorted(left & right):
            violations.append(Violation("AlphabetOverlap", f"{action!r} declared {label}"))

    if initial is None or initial == "":
        violations.append(Violation("MissingInitial", "no initial state declared"))

    if declared_states is None:
        states = {s for t in transitions if len(t) == 3 for s in (t[0], t[2])}
        if initial:
            states.add(initial)
    else:
        states = set(declared_states)
        if initial and initial not in states:
            violations.append(Violation("UnknownState", f"initial state {initial!r} not declared"))

    for state in sorted(states, key=str):
        if not is_valid_state(state):
            violations.append(Violation("InvalidName", f"bad state name {state!r}"))

    alphabet = inputs | outputs | internals
    for t in sorted(transitions, key=str):
        if len(t) != 3:
            violations.append(Violation("MalformedTransition", f"{t!r} is not a triple"))
            continue
        src, act, dst = t
        for s in (src, dst):
            if s not in states:
                violations.append(Violation("UnknownState", f"transition {t!r} uses {s!r}"))
        if act not in alphabet:
            violations.append(Violation("UnknownAction", f"transition {t!r} uses {act!r}"))

    if violations:
        raise ValidationError(violations, name)

    return Iots(
        name=name,
        states=frozenset(states),
        initial=initial,
        inputs=inputs,
        outputs=outputs,
        internals=internals,
        transitions=transitions,
    )


def make_iots(
    name: str,
    initial: str,
    transitions: Iterable[Transition] = (),
    *,
    inputs: Iterable[str] = (),
    outputs: Iterable[str] = (),
    internals: Iterable[str] = (),
    states: Iterable[str] | None = None,
) -> Iots:
    """Keyword-friendly wrapper around :func:`validate`."""
    raw = {
        "name": name,
        "initial": initial,
        "inputs": inputs,
        "outputs": outputs,
        "internals": internals,
        "transitions": list(transitions),
    }
    if states is not None:
        raw["states"] = list(states)
    return validate(raw)


@dataclass(frozen=True)
class SharedProfile:
    """How the alphabets of two composable components overlap."""

    shared: frozenset[str]
    out_ab: frozenset[str]
    out_ba: frozenset[str]
    free_a: frozenset[str]
    free_b: frozenset[str]

    def mirrored(self) -> SharedProfile:
        return SharedProfile(self.shared, self.out_ba, self.out_ab, self.free_b, self.free_a)


def composable(a: Iots, b: Iots) -> SharedProfile:
    """Check that ``a`` and ``b`` only overlap on complementary types."""
    common = a.actions & b.actions
    out_ab = a.outputs & b.inputs
    out_ba = b.outputs & a.inputs
    bad = common - (out_ab | out_ba)
    if bad:
        raise NotComposable([(x, a.kind_of(x), b.kind_of(x)) for x in sorted(bad)])
    return SharedProfile(
        shared=frozenset(common),
        out_ab=frozenset(out_ab),
        out_ba=frozenset(out_ba),
        free_a=frozenset(a.actions - common),
        free_b=frozenset(b.actions - common),
    )


def async_composable(a: Iots, b: Iots) -> SharedProfile:
    """Composable, and no enqueue name of a shared action is already taken."""
    profile = composable(a, b)
    taken = a.actions | b.actions
    clashes = sorted(decorate(x) for x in profile.shared if decorate(x) in taken)
    if clashes:
        raise DecorationClash(clashes)
    return profile


def rename_outputs(a: Iots, m: Iterable[str]) -> Iots:
    """Rename every output in ``m`` to its decorated enqueue variant.

    The decorated actions become outputs of the result; states and the
    transition structure are untouched.
    """
    m = frozenset(m)
    not_outputs = sorted(m - a.outputs)
    if not_outputs:
        raise NotAnOutput(not_outputs)
    if not m:
        return a
    fresh = {x: decorate(x) for x in m}
    clashes = sorted(d for d in fresh.values() if d in a.actions)
    if clashes:
        raise DecorationClash(clashes)
    return Iots(
        name=f"{a.name}>",
        states=a.states,
        initial=a.initial,
        inputs=a.inputs,
        outputs=(a.outputs - m) | frozenset(fresh.values()),
        internals=a.internals,
        transitions=frozenset((s, fresh.get(x, x), t) for s, x, t in a.transitions),
    )
