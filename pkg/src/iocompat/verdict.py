"""Three-valued verdicts with witnesses and citation tags."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any


class Status(str, enum.Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    INCONCLUSIVE = "InconclusiveAtBound"

    def __str__(self) -> str:
        return self.value


# Citation tags used in justifications.
DEF_IOTS_SEP = "Def-IOSeparation"
DEF_OBS_IOTS_SEP = "Def-ObsIOSeparation"
DEF_STRONG_SYNC = "Def-StrongSyncCompat"
DEF_WEAK_SYNC = "Def-WeakSyncCompat"
DEF_ASYNC_COMPAT = "Def-AsyncCompat"
DEF_DEADLOCK = "Def-Deadlock"
DEF_AUTONOMOUS_DF = "Def-AutonomousDF"
LEM_CRUCIAL = "Lem-Crucial"
LEM_EMPTY_QUEUE = "Lem-EmptyQueue"
THM_SYNCH2ASYNCH = "Thm-Synch2Asynch"
THM_ASYNCH2SYNCH = "Thm-Asynch2Synch"
COR_SYNCH_IFF_ASYNCH = "Cor-SynchIFFAsynch"
WAC_LEFT = "WAC-a"
WAC_RIGHT = "WAC-b"
THM_WAC = "Thm-WAC"
THM_COMPLETENESS = "Thm-Completeness"
THM_DF_HALF_DUPLEX = "Thm-DF-HalfDuplex"
THM_DF_AUTONOMOUS = "Thm-DF-Autonomous"
STRONG_IMPLIES_WEAK = "StrongImpliesWeak"
BOUNDED_SEARCH = "Bounded-Exploration"

# Tags naming a proved result, as opposed to a definition or the search itself.
THEOREM_TAGS = frozenset({
    LEM_CRUCIAL,
    LEM_EMPTY_QUEUE,
    THM_SYNCH2ASYNCH,
    THM_ASYNCH2SYNCH,
    COR_SYNCH_IFF_ASYNCH,
    THM_WAC,
    THM_COMPLETENESS,
    THM_DF_HALF_DUPLEX,
    THM_DF_AUTONOMOUS,
    STRONG_IMPLIES_WEAK,
})


@dataclass(frozen=True)
class Witness:
    """Where a property breaks (or is witnessed): a node, an action and a shortest trace."""

    location: str
    action: str | None = None
    trace: tuple[str, ...] = ()
    detail: str | None = None

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"location": self.location}
        if self.action is not None:
            d["action"] = self.action
        d["trace"] = list(self.trace)
        if self.detail is not None:
            d["detail"] = self.detail
        return d


@dataclass(frozen=True)
class Verdict:
    status: Status
    witness: Witness | None = None
    justification: tuple[str, ...] = ()
    bound: int | None = None
    exhaustive: bool | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.status is Status.FAILS and self.witness is None:
            raise ValueError("a failing verdict needs a witness")
        if self.status is Status.INCONCLUSIVE and self.bound is None:
            raise ValueError("an inconclusive verdict needs the bound it was reached at")

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def fails(self) -> bool:
        return self.status is Status.FAILS

    @property
    def inconclusive(self) -> bool:
        return self.status is Status.INCONCLUSIVE

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"status": self.status.value}
        if self.bound is not None:
            d["bound"] = self.bound
        if self.exhaustive is not None:
            d["exhaustive"] = self.exhaustive
        if self.witness is not None:
            d["witness"] = self.witness.to_dict()
        d["justification"] = list(self.justification)
        if self.details:
            d["details"] = _plain(self.details)
        return d

    def describe(self) -> str:
        text = str(self.status)
        if self.status is Status.INCONCLUSIVE:
            text += f"({self.bound})"
        if self.witness is not None:
            w = self.witness
            text += f" at {w.location}"
            if w.action is not None:
                text += f" on {w.action}"
            if w.trace:
                text += " via " + " ".join(w.trace)
            else:
                text += " (initial)"
        return text


def _plain(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [_plain(v) for v in value]
        return sorted(items, key=str) if isinstance(value, (set, frozenset)) else items
    return value


def holds(*justification: str, **kwargs) -> Verdict:
    return Verdict(Status.HOLDS, justification=tuple(justification), **kwargs)


def fails(witness: Witness, *justification: str, **kwargs) -> Verdict:
    return Verdict(Status.FAILS, witness=witness, justification=tuple(justification), **kwargs)


def inconclusive(bound: int, *justification: str, **kwargs) -> Verdict:
    return Verdict(
        Status.INCONCLUSIVE, justification=tuple(justification), bound=bound, **kwargs
    )
