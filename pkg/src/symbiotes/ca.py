"""Game of Life, Immigration Game and Management Game on an unbounded grid.

All three games share the B3/S23 dynamics and differ only in the colour a
newborn cell takes. Grids are sparse: only non-white cells are stored.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from . import _kernel

DEFAULT_EXTENT = 10_000


class CellState(enum.IntEnum):
    WHITE = 0
    RED = 1
    BLUE = 2
    ORANGE = 3
    GREEN = 4
    PURPLE = 5

    @property
    def alive(self) -> bool:
        return 1 <= self <= 4


LIVE_STATES = (CellState.RED, CellState.BLUE, CellState.ORANGE, CellState.GREEN)


class Ruleset(enum.Enum):
    LIFE = _kernel.LIFE
    IMMIGRATION = _kernel.IMMIGRATION
    MANAGEMENT = _kernel.MANAGEMENT


class ExtentError(RuntimeError):
    """A pattern grew past the configured safety extent."""


@dataclass(frozen=True)
class ColourCensus:
    red: int = 0
    blue: int = 0
    orange: int = 0
    green: int = 0

    @property
    def total(self) -> int:
        return self.red + self.blue + self.orange + self.green

    def __getitem__(self, state: int) -> int:
        return (0, self.red, self.blue, self.orange, self.green, 0)[state]

    def __sub__(self, other: ColourCensus) -> ColourCensus:
        return ColourCensus(self.red - other.red, self.blue - other.blue,
                            self.orange - other.orange, self.green - other.green)

    @classmethod
    def from_states(cls, states: Iterable[int]) -> ColourCensus:
        c = Counter(int(s) for s in states)
        return cls(c[1], c[2], c[3], c[4])


@dataclass(frozen=True, eq=False)
class Grid:
    """Sparse grid: ``cells`` maps (x, y) to a non-white state.

    ``y`` grows downwards, matching row order in RLE files and genome
    matrices. Purple (border) cells are only legal at time 0.
    """

    cells: Mapping[tuple[int, int], int] = field(default_factory=dict)
    time: int = 0

    def __post_init__(self):
        cells = {}
        for (x, y), s in self.cells.items():
            s = int(s)
            if s == CellState.WHITE:
                continue
            if not 0 < s <= 5:
                raise ValueError(f"invalid cell state {s} at {(x, y)}")
            cells[int(x), int(y)] = s
        if self.time < 0:
            raise ValueError("time must be non-negative")
        if self.time > 0 and any(s == CellState.PURPLE for s in cells.values()):
            raise ValueError("purple cells may only exist at time 0")
        object.__setattr__(self, "cells", cells)

    def __eq__(self, other):
        if not isinstance(other, Grid):
            return NotImplemented
        return self.time == other.time and self.cells == other.cells

    def __len__(self):
        return len(self.cells)

    def same_cells(self, other: Grid) -> bool:
        """Cell-wise equality, ignoring the step counter."""
        return self.cells == other.cells

    def bounds(self) -> tuple[int, int, int, int]:
        """(min_x, min_y, max_x, max_y); raises on an empty grid."""
        if not self.cells:
            raise ValueError("empty grid has no bounds")
        xs = [x for x, _ in self.cells]
        ys = [y for _, y in self.cells]
        return min(xs), min(ys), max(xs), max(ys)

    def translate(self, dx: int, dy: int) -> Grid:
        return Grid({(x + dx, y + dy): s for (x, y), s in self.cells.items()}, self.time)

    @classmethod
    def from_array(cls, matrix, x0: int = 0, y0: int = 0, time: int = 0) -> Grid:
        """Build a grid from a 2-D array of states, rows are y."""
        m = np.asarray(matrix)
        ys, xs = np.nonzero(m)
        return cls({(int(x) + x0, int(y) + y0): int(m[y, x]) for y, x in zip(ys, xs)}, time)

    def to_array(self) -> tuple[np.ndarray, int, int]:
        """Dense (array, x0, y0) covering the bounding box."""
        x0, y0, x1, y1 = self.bounds()
        out = np.zeros((y1 - y0 + 1, x1 - x0 + 1), np.uint8)
        for (x, y), s in self.cells.items():
            out[y - y0, x - x0] = s
        return out, x0, y0

    def _live_arrays(self):
        live = [(x, y, s) for (x, y), s in self.cells.items() if s != CellState.PURPLE]
        if not live:
            return (np.empty(0, np.int64), np.empty(0, np.int64), np.empty(0, np.int8))
        a = np.array(live, dtype=np.int64)
        return a[:, 0].copy(), a[:, 1].copy(), a[:, 2].astype(np.int8)


def birth_colour(neighbours: ColourCensus, ruleset: Ruleset) -> CellState:
    """Colour of a cell born among exactly three live neighbours."""
    if neighbours.total != 3:
        raise ValueError(f"birth needs exactly 3 live neighbours, got {neighbours.total}")
    return CellState(_kernel._birth(neighbours.red, neighbours.blue, neighbours.orange,
                                    neighbours.green, ruleset.value))


def _glider_table() -> np.ndarray:
    """Direction code for every 3x3 glider phase, indexed by its 9-bit mask."""
    def life_step(cells):
        counts = Counter((x + dx, y + dy) for x, y in cells
                         for dx in (-1, 0, 1) for dy in (-1, 0, 1) if dx or dy)
        return {p for p, c in counts.items() if c == 3 or (c == 2 and p in cells)}

    codes = {(1, 1): 0, (-1, 1): 1, (1, -1): 2, (-1, -1): 3}
    table = np.full(512, -1, np.int8)
    base = {(1, 0), (2, 1), (0, 2), (1, 2), (2, 2)}  # moves (+1, +1)
    for sx in (1, -1):
        for sy in (1, -1):
            for swap in (False, True):
                cells = {((y, x) if swap else (x, y)) for x, y in base}
                cells = {(sx * x, sy * y) for x, y in cells}
                direction = (sx, sy)
                for _ in range(4):
                    x0 = min(x for x, _ in cells)
                    y0 = min(y for _, y in cells)
                    mask = sum(1 << ((y - y0) * 3 + (x - x0)) for x, y in cells)
                    table[mask] = codes[direction]
                    cells = life_step(cells)
    return table


GLIDER_TABLE = _glider_table()


def advance_arrays(xs, ys, st, steps: int, ruleset: Ruleset,
                   extent: int = DEFAULT_EXTENT, skip_cycles: bool = True):
    """Array-level run used by the hot paths. Input must hold live states only.

    ``skip_cycles`` enables the exact recurrence and glider shortcuts.
    """
    if not 0 < extent <= _kernel.MAX_EXTENT:
        raise ValueError(f"extent must be in 1..{_kernel.MAX_EXTENT}")
    xs, ys, st, status = _kernel.advance(xs, ys, st, int(steps), ruleset.value,
                                         int(extent), skip_cycles, GLIDER_TABLE)
    if status == _kernel.EXTENT_EXCEEDED:
        raise ExtentError(f"pattern left the +/-{extent} safety extent")
    return xs, ys, st


def run(grid: Grid, steps: int, ruleset: Ruleset, extent: int = DEFAULT_EXTENT) -> Grid:
    """Apply ``step`` exactly ``steps`` times."""
    if steps < 0:
        raise ValueError("steps must be non-negative")
    if steps == 0:
        return grid
    xs, ys, st = advance_arrays(*grid._live_arrays(), steps, ruleset, extent)
    return Grid(dict(zip(zip(xs.tolist(), ys.tolist()), st.tolist())), grid.time + steps)


def step(grid: Grid, ruleset: Ruleset, extent: int = DEFAULT_EXTENT) -> Grid:
    return run(grid, 1, ruleset, extent)


def census(grid: Grid) -> ColourCensus:
    return ColourCensus.from_states(grid.cells.values())


def project_binary(grid: Grid) -> Grid:
    """Every live cell becomes red; purple borders are kept as they are dead."""
    return Grid({p: (CellState.RED if 1 <= s <= 4 else s) for p, s in grid.cells.items()},
                grid.time)


_TO_IMMIGRATION = {1: 1, 2: 2, 3: 1, 4: 2, 5: 0}


def recolour_management_to_immigration(grid: Grid) -> Grid:
    return Grid({p: _TO_IMMIGRATION[s] for p, s in grid.cells.items()}, grid.time)
