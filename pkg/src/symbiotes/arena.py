"""One-on-one Immigration Game contests between two genomes."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .ca import DEFAULT_EXTENT, CellState, Grid, Ruleset, advance_arrays
from .genome import Genome

TIME_LIMIT_FLOOR = 1000
TIME_LIMIT_SLOPE = 20


class Winner(enum.Enum):
    RED = "RedWins"
    BLUE = "BlueWins"
    TIE = "Tie"


@dataclass(frozen=True)
class GameOutcome:
    growth_red: int
    growth_blue: int
    winner: Winner
    steps_played: int

    def score(self) -> float:
        """Red's share of the win: 1, 0.5 or 0."""
        return {Winner.RED: 1.0, Winner.TIE: 0.5, Winner.BLUE: 0.0}[self.winner]


def _placement(a: Genome, b: Genome):
    gap = max(a.width, b.width)
    h = max(a.height, b.height)
    return (0, (h - a.height) // 2), (a.width + gap, (h - b.height) // 2)


def place_contest(a: Genome, b: Genome) -> Grid:
    """Red copy of ``a`` on the left, blue copy of ``b`` to its right.

    The dead gap between them is max(width_a, width_b) columns and the two
    matrices are centred vertically. Purple borders are kept.
    """
    (ax, ay), (bx, by) = _placement(a, b)
    cells = {}
    for genome, colour, x0, y0 in ((a, CellState.RED, ax, ay), (b, CellState.BLUE, bx, by)):
        ys, xs = np.nonzero(genome.cells)
        for y, x in zip(ys.tolist(), xs.tolist()):
            s = genome.cells[y, x]
            cells[x + x0, y + y0] = colour if s == CellState.RED else s
    return Grid(cells)


def _live_coords(genome: Genome, x0: int, y0: int):
    ys, xs = np.nonzero(genome.cells == CellState.RED)
    return xs.astype(np.int64) + x0, ys.astype(np.int64) + y0


def time_limit(a: Genome, b: Genome, floor: int = TIME_LIMIT_FLOOR,
               slope: int = TIME_LIMIT_SLOPE) -> int:
    return max(floor, slope * (a.live_count + b.live_count))


def play(a: Genome, b: Genome, floor: int = TIME_LIMIT_FLOOR,
         slope: int = TIME_LIMIT_SLOPE, extent: int = DEFAULT_EXTENT) -> GameOutcome:
    """Immigration Game with ``a`` as red and ``b`` as blue."""
    (ax, ay), (bx, by) = _placement(a, b)
    rx, ry = _live_coords(a, ax, ay)
    bxs, bys = _live_coords(b, bx, by)
    xs = np.concatenate([rx, bxs])
    ys = np.concatenate([ry, bys])
    st = np.concatenate([np.full(len(rx), 1, np.int8), np.full(len(bxs), 2, np.int8)])
    steps = time_limit(a, b, floor, slope)
    _, _, final = advance_arrays(xs, ys, st, steps, Ruleset.IMMIGRATION, extent)
    growth_red = int((final == 1).sum()) - len(rx)
    growth_blue = int((final == 2).sum()) - len(bxs)
    if growth_red > growth_blue:
        winner = Winner.RED
    elif growth_red < growth_blue:
        winner = Winner.BLUE
    else:
        winner = Winner.TIE
    return GameOutcome(growth_red, growth_blue, winner, steps)
