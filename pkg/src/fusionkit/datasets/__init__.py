"""Bundled center-bundle fixtures."""
from __future__ import annotations

from pathlib import Path

HERE = Path(__file__).resolve().parent

ALIASES = {"ising": "ising_graded"}


def names() -> list[str]:
    return sorted(p.stem for p in HERE.glob("*.json"))


def path(name: str) -> Path:
    return HERE / f"{ALIASES.get(name, name)}.json"


def resolve(source) -> Path:
    """A filesystem path for ``source``: an existing file, a bundled name, or a
    path whose stem names a bundled dataset (so ``examples/ising.json`` works)."""
    p = Path(source)
    if p.is_file():
        return p
    stem = p.stem if p.suffix == ".json" else str(source)
    candidate = path(stem)
    if candidate.is_file():
        return candidate
    return p
