"""End-to-end decision procedure for compatibility and deadlock-freeness.

The decision tables (:func:`compat_conclusion`, :func:`deadlock_conclusion`)
are pure functions of the recorded sub-verdicts, so a report can always be
re-checked from its own contents.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from . import verdict as v
from .analysis import (
    LEFT,
    RIGHT,
    DeadlockReport,
    autonomous_df,
    half_duplex_check,
    io_separated,
    obs_io_separated,
    sync_deadlocks,
)
from .compat import (
    STRONG,
    WEAK,
    async_compat_bounded,
    async_deadlock_bounded,
    completeness_x,
    strong_sync,
    wac_left,
    wac_right,
    weak_sync,
)
from .compose import async_explore
from .model import Iots, async_composable

STRONG_ASYNC_COMPATIBLE = "StrongAsyncCompatible"
WEAK_ASYNC_COMPATIBLE = "WeakAsyncCompatible"
NOT_WEAK_ASYNC_COMPATIBLE = "NotWeakAsyncCompatible"
NOT_STRONG_ASYNC_COMPATIBLE = "NotStrongAsyncCompatible"
UNKNOWN = "Unknown"

ASYNC_DEADLOCK_FREE = "AsyncDeadlockFree"
ASYNC_DEADLOCK_FOUND = "AsyncDeadlockFound"

POSITIVE = {STRONG_ASYNC_COMPATIBLE, WEAK_ASYNC_COMPATIBLE}
NEGATIVE = {NOT_STRONG_ASYNC_COMPATIBLE, NOT_WEAK_ASYNC_COMPATIBLE}

# Order of checks in a report.
CHECKS = (
    "io_separated_left",
    "io_separated_right",
    "obs_io_separated_left",
    "obs_io_separated_right",
    "half_duplex",
    "strong_sync",
    "weak_sync",
    "wac_left",
    "wac_right",
    "completeness_x",
    "async_strong",
    "async_weak",
    "sync_deadlocks",
    "autonomous_df_left",
    "autonomous_df_right",
    "async_deadlocks",
)


def _holds(checks: dict, name: str) -> bool:
    x = checks.get(name)
    return x is not None and x.holds


def _fails(checks: dict, name: str) -> bool:
    x = checks.get(name)
    return x is not None and x.fails


def _exhaustive_holds(checks: dict, name: str) -> bool:
    """A bounded check that held without the queue bound ever biting."""
    x = checks.get(name)
    return x is not None and x.holds and bool(x.exhaustive)


def criterion_conclusion(checks: dict) -> tuple[str, list[str]]:
    """Conclusion of the criterion route alone (no half-duplex shortcut)."""
    if _holds(checks, "wac_left") and _holds(checks, "wac_right"):
        return WEAK_ASYNC_COMPATIBLE, [v.WAC_LEFT, v.WAC_RIGHT, v.THM_WAC]
    if _holds(checks, "completeness_x"):
        failed = v.WAC_LEFT if _fails(checks, "wac_left") else v.WAC_RIGHT
        return NOT_WEAK_ASYNC_COMPATIBLE, [failed, v.THM_COMPLETENESS]
    return UNKNOWN, []


def weak_conclusion(checks: dict) -> tuple[str, list[str]]:
    if _holds(checks, "half_duplex"):
        if _holds(checks, "weak_sync"):
            return WEAK_ASYNC_COMPATIBLE, [v.LEM_CRUCIAL, v.DEF_WEAK_SYNC, v.COR_SYNCH_IFF_ASYNCH]
        if _fails(checks, "weak_sync"):
            return NOT_WEAK_ASYNC_COMPATIBLE, [v.LEM_CRUCIAL, v.DEF_WEAK_SYNC, v.COR_SYNCH_IFF_ASYNCH]
    verdict, chain = criterion_conclusion(checks)
    if verdict != UNKNOWN:
        return verdict, chain
    if _fails(checks, "async_weak"):
        return NOT_WEAK_ASYNC_COMPATIBLE, [v.DEF_ASYNC_COMPAT, v.BOUNDED_SEARCH]
    if _exhaustive_holds(checks, "async_weak"):
        return WEAK_ASYNC_COMPATIBLE, [v.DEF_ASYNC_COMPAT, v.BOUNDED_SEARCH]
    return UNKNOWN, []


def strong_conclusion(checks: dict) -> tuple[str, list[str]]:
    if _holds(checks, "half_duplex"):
        if _holds(checks, "strong_sync"):
            return STRONG_ASYNC_COMPATIBLE, [v.LEM_CRUCIAL, v.DEF_STRONG_SYNC, v.COR_SYNCH_IFF_ASYNCH]
        if _fails(checks, "strong_sync"):
            return NOT_STRONG_ASYNC_COMPATIBLE, [v.LEM_CRUCIAL, v.DEF_STRONG_SYNC, v.COR_SYNCH_IFF_ASYNCH]
    if _fails(checks, "strong_sync"):
        return NOT_STRONG_ASYNC_COMPATIBLE, [v.DEF_STRONG_SYNC, v.THM_ASYNCH2SYNCH]
    weak, chain = weak_conclusion(checks)
    if weak == NOT_WEAK_ASYNC_COMPATIBLE:
        return NOT_STRONG_ASYNC_COMPATIBLE, [*chain, v.STRONG_IMPLIES_WEAK]
    if _fails(checks, "async_strong"):
        return NOT_STRONG_ASYNC_COMPATIBLE, [v.DEF_ASYNC_COMPAT, v.BOUNDED_SEARCH]
    if _exhaustive_holds(checks, "async_strong"):
        return STRONG_ASYNC_COMPATIBLE, [v.DEF_ASYNC_COMPAT, v.BOUNDED_SEARCH]
    return UNKNOWN, []


def compat_conclusion(checks: dict, mode: str) -> tuple[str, list[str]]:
    return strong_conclusion(checks) if mode == STRONG else weak_conclusion(checks)


def deadlock_conclusion(checks: dict) -> tuple[str, list[str]]:
    weak, weak_chain = weak_conclusion(checks)
    if weak == WEAK_ASYNC_COMPATIBLE:
        sync_dl = checks.get("sync_deadlocks")
        if _holds(checks, "half_duplex") and sync_dl is not None:
            outcome = ASYNC_DEADLOCK_FREE if sync_dl.empty else ASYNC_DEADLOCK_FOUND
            return outcome, [*weak_chain, v.DEF_DEADLOCK, v.THM_DF_HALF_DUPLEX]
        for side in ("autonomous_df_left", "autonomous_df_right"):
            if _holds(checks, side):
                return ASYNC_DEADLOCK_FREE, [*weak_chain, v.DEF_AUTONOMOUS_DF, v.THM_DF_AUTONOMOUS]
    async_dl = checks.get("async_deadlocks")
    if async_dl is not None and not async_dl.empty:
        return ASYNC_DEADLOCK_FOUND, [v.DEF_DEADLOCK, v.BOUNDED_SEARCH]
    if async_dl is not None and async_dl.exhaustive:
        # no enqueue was ever cut off, so the whole system was explored
        return ASYNC_DEADLOCK_FREE, [v.DEF_DEADLOCK, v.BOUNDED_SEARCH]
    return UNKNOWN, []


@dataclass
class Report:
    left: str
    right: str
    mode: str
    bound: int
    checks: dict[str, Any] = field(default_factory=dict)
    conclusion: str = UNKNOWN
    justification: list[str] = field(default_factory=list)
    criterion_conclusion: str = UNKNOWN
    deadlock_conclusion: str = UNKNOWN
    deadlock_justification: list[str] = field(default_factory=list)

    def recompute(self) -> tuple[tuple[str, list[str]], tuple[str, list[str]], str]:
        return (
            compat_conclusion(self.checks, self.mode),
            deadlock_conclusion(self.checks),
            criterion_conclusion(self.checks)[0],
        )

    def counterexample(self):
        """Witness backing a negative conclusion, if there is one."""
        if self.conclusion not in NEGATIVE:
            return None
        for name in ("async_strong" if self.mode == STRONG else "async_weak",
                     "wac_left", "wac_right", "weak_sync", "strong_sync"):
            x = self.checks.get(name)
            if x is not None and x.fails:
                return x.witness
        return None

    def to_dict(self) -> dict[str, Any]:
        checks = {}
        for name in CHECKS:
            x = self.checks.get(name)
            checks[name] = None if x is None else x.to_dict()
        witness = self.counterexample()
        return {
            "left": self.left,
            "right": self.right,
            "mode": self.mode,
            "bound": self.bound,
            "conclusion": self.conclusion,
            "justification": list(self.justification),
            "criterion_conclusion": self.criterion_conclusion,
            "deadlock_conclusion": self.deadlock_conclusion,
            "deadlock_justification": list(self.deadlock_justification),
            "counterexample": None if witness is None else witness.to_dict(),
            "checks": checks,
        }


def decide(
    a: Iots, b: Iots, k: int, mode: str = WEAK, *, force_bounded: bool = False
) -> Report:
    """Run every check and derive the compatibility and deadlock conclusions.

    Bounded exploration only runs when no theorem settles the question (or
    when ``force_bounded`` is set); its results only ever refute.
    """
    if mode not in (STRONG, WEAK):
        raise ValueError(f"mode must be 'strong' or 'weak', not {mode!r}")
    async_composable(a, b)
    report = Report(a.name, b.name, mode, k)
    c = report.checks
    c["io_separated_left"] = io_separated(a)
    c["io_separated_right"] = io_separated(b)
    c["obs_io_separated_left"] = obs_io_separated(a)
    c["obs_io_separated_right"] = obs_io_separated(b)
    c["half_duplex"] = half_duplex_check(a, b)
    c["strong_sync"] = strong_sync(a, b)
    c["weak_sync"] = weak_sync(a, b)
    c["wac_left"] = wac_left(a, b)
    c["wac_right"] = wac_right(a, b)
    c["sync_deadlocks"] = sync_deadlocks(a, b)
    c["autonomous_df_left"] = autonomous_df(a, b, LEFT)
    c["autonomous_df_right"] = autonomous_df(a, b, RIGHT)

    graph = None

    def explored():
        nonlocal graph
        if graph is None:
            graph = async_explore(a, b, k)
        return graph

    wac_holds = c["wac_left"].holds and c["wac_right"].holds
    if not wac_holds:
        # exact and cheap when half-duplex; otherwise needs the bounded exploration
        if c["half_duplex"].holds:
            c["completeness_x"] = completeness_x(a, b, k, half_duplex=c["half_duplex"])
        elif compat_conclusion(c, mode)[0] == UNKNOWN or force_bounded:
            c["completeness_x"] = completeness_x(
                a, b, k, graph=explored(), half_duplex=c["half_duplex"]
            )

    if force_bounded or compat_conclusion(c, mode)[0] == UNKNOWN:
        c["async_strong" if mode == STRONG else "async_weak"] = async_compat_bounded(
            a, b, k, mode, graph=explored()
        )
    if force_bounded:
        other = "async_weak" if mode == STRONG else "async_strong"
        c[other] = async_compat_bounded(a, b, k, WEAK if mode == STRONG else STRONG, graph=explored())
    if force_bounded or deadlock_conclusion(c)[0] == UNKNOWN:
        c["async_deadlocks"] = async_deadlock_bounded(a, b, k, graph=explored())

    (report.conclusion, report.justification), (
        report.deadlock_conclusion,
        report.deadlock_justification,
    ), report.criterion_conclusion = report.recompute()
    return report


def consistent(report: Report) -> bool:
    """The recorded conclusions follow from the recorded sub-verdicts."""
    (concl, just), (dl, dl_just), crit = report.recompute()
    return (
        concl == report.conclusion
        and just == report.justification
        and dl == report.deadlock_conclusion
        and dl_just == report.deadlock_justification
        and crit == report.criterion_conclusion
    )


__all__ = [
    "ASYNC_DEADLOCK_FOUND",
    "ASYNC_DEADLOCK_FREE",
    "NOT_STRONG_ASYNC_COMPATIBLE",
    "NOT_WEAK_ASYNC_COMPATIBLE",
    "Report",
    "STRONG_ASYNC_COMPATIBLE",
    "UNKNOWN",
    "WEAK_ASYNC_COMPATIBLE",
    "compat_conclusion",
    "consistent",
    "deadlock_conclusion",
    "decide",
    "DeadlockReport",
    "criterion_conclusion",
    "strong_conclusion",
    "weak_conclusion",
]
