"""Compatibility and deadlock analysis for two communicating I/O-transition systems."""

from .analysis import (
    ClosureSet,
    DeadlockReport,
    autonomous_df,
    closure,
    half_duplex_check,
    io_separated,
    obs_io_separated,
    sync_deadlocks,
)
from .compat import (
    CompatViolation,
    async_compat_bounded,
    async_deadlock_bounded,
    completeness_x,
    strong_sync,
    wac,
    wac_left,
    wac_right,
    weak_sync,
)
from .compose import (
    AsyncConfig,
    AsyncGraph,
    SyncGraph,
    SyncState,
    async_explore,
    criterion_product_left,
    criterion_product_right,
    sync_product,
)
from .errors import (
    BoundTooSmall,
    DecorationClash,
    IotsError,
    IotsSyntaxError,
    KindMismatch,
    NotAnOutput,
    NotComposable,
    StateLimitExceeded,
    UnknownState,
    ValidationError,
)
from .formats import emit_dot, emit_iots, emit_report_json, load_iots, parse_iots
from .model import (
    Iots,
    SharedProfile,
    async_composable,
    composable,
    make_iots,
    rename_outputs,
    validate,
)
from .pipeline import Report, decide
from .verdict import Status, Verdict, Witness

__version__ = "0.1.0"
