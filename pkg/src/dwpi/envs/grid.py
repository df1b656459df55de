"""Plain-text grid layouts.

One whitespace-separated token per cell:

    '#'    wall
    '.'    free cell
    'T<v>' treasure worth v (terminal)
    'R'    road cell (cars drive here)
    'G'    green item      'Y' yellow item      'D' red item
    'A'    learning agent start
    'B'    scripted agent start (Item Gathering)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

Cell = tuple[int, int]


@dataclass
class Grid:
    n_rows: int
    n_cols: int
    walls: set[Cell] = field(default_factory=set)
    treasures: dict[Cell, float] = field(default_factory=dict)
    roads: set[Cell] = field(default_factory=set)
    items: dict[Cell, str] = field(default_factory=dict)
    agent_start: Optional[Cell] = None
    other_start: Optional[Cell] = None

    def in_bounds(self, cell: Cell) -> bool:
        r, c = cell
        return 0 <= r < self.n_rows and 0 <= c < self.n_cols

    def walkable(self, cell: Cell) -> bool:
        return self.in_bounds(cell) and cell not in self.walls


def parse_grid(text: str) -> Grid:
    rows = [line.split() for line in text.strip().splitlines() if line.strip()]
    if not rows:
        raise ValueError("empty grid")
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise ValueError("ragged grid: all rows must have the same width")
    grid = Grid(n_rows=len(rows), n_cols=width)
    for r, row in enumerate(rows):
        for c, tok in enumerate(row):
            cell = (r, c)
            if tok == ".":
                continue
            if tok == "#":
                grid.walls.add(cell)
            elif tok == "R":
                grid.roads.add(cell)
            elif tok in ("G", "Y", "D"):
                grid.items[cell] = tok
            elif tok == "A":
                grid.agent_start = cell
            elif tok == "B":
                grid.other_start = cell
            elif tok.startswith("T"):
                try:
                    grid.treasures[cell] = float(tok[1:])
                except ValueError:
                    raise ValueError(f"bad treasure token {tok!r} at {cell}")
            else:
                raise ValueError(f"unknown grid token {tok!r} at {cell}")
    return grid


def load_grid(path) -> Grid:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_grid(fh.read())
