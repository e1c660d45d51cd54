"""Locate and read the golden grid fixtures shipped with the repository."""

from __future__ import annotations

import os
from pathlib import Path


def fixtures_dir() -> Path:
    env = os.environ.get("ARTIFACT_FIXTURES")
    if env:
        return Path(env)
    return Path(__file__).resolve().parents[2] / "fixtures"


def load_grid(name: str) -> dict[tuple[int, int], int]:
    """Read a TSV grid; keys are (row, column) of the nonempty cells."""
    grid: dict[tuple[int, int], int] = {}
    text = (fixtures_dir() / name).read_text()
    for r, line in enumerate(text.splitlines()):
        for c, cell in enumerate(line.split("\t")):
            if cell.strip():
                grid[(r, c)] = int(cell)
    return grid
