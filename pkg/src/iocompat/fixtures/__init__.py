"""Bundled example components.

``PAIRS`` maps a pair name to the two component fixtures it combines.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from ..formats import parse_iots
from ..model import Iots

PAIRS = {
    "maker_user": ("maker", "user"),
    "ma_mb": ("ma", "mb"),
    "ma_mb_prime": ("ma", "mb_prime"),
    "fig4": ("fig4_a", "fig4_b"),
    "fig5": ("fig5_a", "fig5_b"),
    "fig7": ("fig7_a", "fig7_b"),
    "ex63_recv": ("ex63_recv_a", "ex63_recv_b"),
    "ex63_send": ("ex63_send_a", "ex63_send_b"),
    "fig10": ("fig10_a", "fig10_b"),
    "fig11": ("fig11_a", "fig11_b"),
}


def names() -> list[str]:
    return sorted(
        p.name[: -len(".iots")]
        for p in resources.files(__name__).iterdir()
        if p.name.endswith(".iots")
    )


def text(name: str) -> str:
    path = resources.files(__name__).joinpath(f"{name}.iots")
    if not path.is_file():
        raise KeyError(f"no bundled fixture named {name!r}")
    return path.read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def load(name: str) -> Iots:
    return parse_iots(text(name))


def pair(name: str) -> tuple[Iots, Iots]:
    left, right = PAIRS[name]
    return load(left), load(right)
