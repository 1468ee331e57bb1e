"""Seed patterns (genomes) and their part structure."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .ca import CellState

MAX_PARTS = 5


@dataclass(frozen=True)
class PartRegion:
    x_offset: int
    y_offset: int
    width: int
    height: int

    def slice(self):
        return (slice(self.y_offset, self.y_offset + self.height),
                slice(self.x_offset, self.x_offset + self.width))


@dataclass(eq=False)
class Genome:
    """Static t = 0 pattern: a matrix over {0 dead, 1 live, 5 border}.

    Parts are full-height column bands separated by single purple columns.
    ``id`` and ``birth_index`` are assigned when the genome enters a run.
    """

    cells: np.ndarray
    parts: list[PartRegion] = field(default_factory=list)
    id: Optional[int] = None
    birth_index: Optional[int] = None

    def __post_init__(self):
        cells = np.array(self.cells, dtype=np.uint8, copy=True)
        if cells.ndim != 2 or cells.size == 0:
            raise ValueError("genome matrix must be a non-empty 2-D array")
        bad = ~np.isin(cells, (CellState.WHITE, CellState.RED, CellState.PURPLE))
        if bad.any():
            raise ValueError("genome cells must be 0 (dead), 1 (live) or 5 (border)")
        cells.flags.writeable = False
        self.cells = cells
        if not self.parts:
            self.parts = parts_from_borders(cells)
        self._check_parts()

    def _check_parts(self):
        h, w = self.cells.shape
        if not 1 <= len(self.parts) <= MAX_PARTS:
            raise ValueError(f"genome must have 1..{MAX_PARTS} parts, got {len(self.parts)}")
        covered = np.zeros((h, w), bool)
        for p in self.parts:
            if p.width < 1 or p.height < 1 or p.x_offset < 0 or p.y_offset < 0 \
                    or p.x_offset + p.width > w or p.y_offset + p.height > h:
                raise ValueError(f"part {p} lies outside the {w}x{h} matrix")
            if covered[p.slice()].any():
                raise ValueError("parts overlap")
            covered[p.slice()] = True
            if (self.cells[p.slice()] == CellState.PURPLE).any():
                raise ValueError("border cell inside a part")
        if ((self.cells == CellState.PURPLE) != ~covered).any():
            raise ValueError("cells outside parts must be borders and vice versa")

    @property
    def width(self) -> int:
        return self.cells.shape[1]

    @property
    def height(self) -> int:
        return self.cells.shape[0]

    @property
    def part_count(self) -> int:
        return len(self.parts)

    @property
    def live_count(self) -> int:
        return int((self.cells == CellState.RED).sum())

    def part_matrix(self, index: int) -> np.ndarray:
        if not 0 <= index < len(self.parts):
            raise IndexError(f"part index {index} out of range for {len(self.parts)} parts")
        return self.cells[self.parts[index].slice()]

    def with_cells(self, cells) -> Genome:
        """Same part structure over a new matrix of the same shape."""
        cells = np.asarray(cells)
        if cells.shape != self.cells.shape:
            raise ValueError("shape mismatch")
        return Genome(cells, list(self.parts))

    def same_pattern(self, other: Genome) -> bool:
        return self.cells.shape == other.cells.shape and bool((self.cells == other.cells).all())

    def __repr__(self):
        return (f"Genome({self.width}x{self.height}, parts={self.part_count}, "
                f"live={self.live_count}, id={self.id})")


def parts_from_borders(cells: np.ndarray) -> list[PartRegion]:
    """Recover part regions from the full-height purple border columns."""
    h, w = cells.shape
    border = (cells == CellState.PURPLE).all(axis=0)
    parts = []
    start = 0
    for x in range(w + 1):
        if x == w or border[x]:
            if x > start:
                parts.append(PartRegion(start, 0, x - start, h))
            start = x + 1
    return parts


def from_matrix(matrix) -> Genome:
    return Genome(np.asarray(matrix, dtype=np.uint8))
