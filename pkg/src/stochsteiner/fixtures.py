"""Bundled example instances (the four worked figures)."""

from __future__ import annotations

from importlib import resources

from .instance import StochasticInstance
from .io import parse_instance

NAMES = ("fig1", "fig1_rooted", "fig2", "fig3", "fig4", "fig4_swapped")


def fixture_text(name: str) -> str:
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(NAMES)}")
    return resources.files(__package__).joinpath("data").joinpath(f"{name}.sstp").read_text(encoding="utf-8")


def load(name: str) -> StochasticInstance:
    return parse_instance(fixture_text(name), name=name)
