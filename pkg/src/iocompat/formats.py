"""The ``.iots`` text format plus DOT and JSON emitters.

A component file looks like::

    # comments run to the end of the line
    iots Maker
    inputs material
    outputs ready fail
    internals make
    init 0
    0 material? 1
    1 make~ 2
    2 ready! 0
    2 fail! 0

The suffix on each transition label names its kind (``?`` input, ``!``
output, ``~`` internal) and must agree with the declarations. An optional
``states`` line declares states that occur in no transition.
"""

from __future__ import annotations

import json
from pathlib import Path

from .compose import AsyncGraph, Graph
from .errors import IotsSyntaxError, KindMismatch
from .model import INPUT, INTERNAL, OUTPUT, Iots, state_sort_key, validate

SUFFIX = {"?": INPUT, "!": OUTPUT, "~": INTERNAL}
KIND_SUFFIX = {kind: suffix for suffix, kind in SUFFIX.items()}
_DECLARATIONS = {"inputs": INPUT, "outputs": OUTPUT, "internals": INTERNAL}


def parse_iots(text: str) -> Iots:
    name = None
    initial = None
    states: list[str] = []
    declared: dict[str, list[str]] = {INPUT: [], OUTPUT: [], INTERNAL: []}
    pending: list[tuple[int, str, str, str, str]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0]
        if name is None:
            if head != "iots" or len(tokens) != 2:
                raise IotsSyntaxError(lineno, "expected header 'iots <Name>'")
            name = tokens[1]
            continue
        if head == "iots":
            raise IotsSyntaxError(lineno, "only one component per file")
        if head in _DECLARATIONS:
            kind = _DECLARATIONS[head]
            for tok in tokens[1:]:
                if tok in _DECLARATIONS:
                    kind = _DECLARATIONS[tok]
                else:
                    declared[kind].append(tok)
        elif head == "states":
            states.extend(tokens[1:])
        elif head == "init":
            if len(tokens) != 2:
                raise IotsSyntaxError(lineno, "expected 'init <state>'")
            if initial is not None:
                raise IotsSyntaxError(lineno, "initial state declared twice")
            initial = tokens[1]
        elif len(tokens) == 3:
            src, label, dst = tokens
            if len(label) < 2 or label[-1] not in SUFFIX:
                raise IotsSyntaxError(lineno, f"label {label!r} needs a ?, ! or ~ suffix")
            pending.append((lineno, src, label[:-1], SUFFIX[label[-1]], dst))
        else:
            raise IotsSyntaxError(lineno, f"cannot parse {line!r}")

    if name is None:
        raise IotsSyntaxError(1, "missing 'iots <Name>' header")

    kinds: dict[str, str] = {}
    for kind, names in declared.items():
        for n in names:
            kinds.setdefault(n, kind)
    for lineno, _, action, kind, _ in pending:
        if kinds.get(action) != kind:
            raise KindMismatch(lineno, action, kind, kinds.get(action))

    raw = {
        "name": name,
        "initial": initial,
        "inputs": declared[INPUT],
        "outputs": declared[OUTPUT],
        "internals": declared[INTERNAL],
        "transitions": [(src, action, dst) for _, src, action, _, dst in pending],
    }
    if states:
        raw["states"] = set(states) | {s for _, s, _, _, _ in pending} | {
            d for *_, d in pending
        } | ({initial} if initial else set())
    return validate(raw)


def load_iots(path: str | Path) -> Iots:
    return parse_iots(Path(path).read_text(encoding="utf-8"))


def emit_iots(a: Iots) -> str:
    lines = [f"iots {a.name}"]
    for keyword, names in (
        ("inputs", a.inputs),
        ("outputs", a.outputs),
        ("internals", a.internals),
    ):
        lines.append(" ".join([keyword, *sorted(names)]))
    mentioned = {a.initial} | {s for t in a.transitions for s in (t[0], t[2])}
    isolated = sorted(a.states - mentioned, key=state_sort_key)
    if isolated:
        lines.append(" ".join(["states", *isolated]))
    lines.append(f"init {a.initial}")
    for src, act, dst in a.sorted_transitions():
        lines.append(f"{src} {act}{KIND_SUFFIX[a.kind_of(act)]} {dst}")
    return "\n".join(lines) + "\n"


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(graph: Graph, name: str = "product") -> str:
    """Render an explored graph; sinks are red, cut-off configurations dashed."""
    horizon = graph.horizon if isinstance(graph, AsyncGraph) else set()
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;", "  node [shape=box];"]
    for node in graph.sorted_nodes():
        attrs = []
        if node == graph.initial:
            attrs.append("penwidth=2")
        if node in horizon:
            attrs.append("style=dashed")
        elif graph.out_degree(node) == 0:
            attrs.append("color=red")
            attrs.append("fontcolor=red")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_quote(str(node))}{suffix};")
    for src, label, dst in graph.sorted_edges():
        lines.append(f"  {_quote(str(src))} -> {_quote(str(dst))} [label={_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_json(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def emit_report_json(report) -> str:
    return emit_json(report.to_dict())


def error_document(error: Exception) -> dict:
    return {"error": type(error).__name__, "message": str(error)}

