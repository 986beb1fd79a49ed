"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations

from dataclasses import dataclass


class IotsError(Exception):
    """Base class for all errors raised by iocompat."""


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


class ValidationError(IotsError):
    """A raw component description violates one or more structural invariants."""

    def __init__(self, violations: list[Violation], name: str | None = None):
        self.violations = list(violations)
        self.name = name
        head = f"invalid IOTS {name!r}" if name else "invalid IOTS"
        super().__init__(head + ": " + "; ".join(str(v) for v in self.violations))

    @property
    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


class NotComposable(IotsError):
    """Two components overlap on actions that are not of complementary type."""

    def __init__(self, offending: list[tuple[str, str, str]]):
        # (action, kind in A, kind in B)
        self.offending = list(offending)
        detail = ", ".join(f"{a} ({ka} in A, {kb} in B)" for a, ka, kb in self.offending)
        super().__init__(f"components are not composable: {detail}")


class DecorationClash(IotsError):
    def __init__(self, actions: list[str]):
        self.actions = list(actions)
        super().__init__(
            "decorated variant of a shared action already in use: " + ", ".join(self.actions)
        )


class NotAnOutput(IotsError):
    def __init__(self, actions: list[str]):
        self.actions = list(actions)
        super().__init__("cannot rename non-output actions: " + ", ".join(self.actions))


class UnknownState(IotsError):
    def __init__(self, state: str):
        self.state = state
        super().__init__(f"unknown state {state!r}")


class BoundTooSmall(IotsError):
    def __init__(self, bound: int):
        self.bound = bound
        super().__init__(f"queue bound must be a positive integer, got {bound!r}")


class StateLimitExceeded(IotsError):
    def __init__(self, limit: int):
        self.limit = limit
        super().__init__(
            f"state space exceeds {limit} nodes (raise IOTS_COMPAT_MAX_STATES to allow more)"
        )


class IotsSyntaxError(IotsError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class KindMismatch(IotsError):
    def __init__(self, line: int, action: str, suffix_kind: str, declared: str | None):
        self.line = line
        self.action = action
        declared_text = declared if declared else "undeclared"
        super().__init__(
            f"line {line}: action {action!r} used as {suffix_kind} but declared {declared_text}"
        )
