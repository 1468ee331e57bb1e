"""Golly-compatible multi-state RLE.

State 0 is written ``.`` and states 1..5 ``A``..``E``. The two-state
symbols ``b``/``o`` are accepted on input. A ``#CXRLE Pos=x,y Gen=t`` line
carries the pattern origin and step counter so that grids round-trip
exactly; without it the pattern is placed with its top-left at (0, 0).
"""

from __future__ import annotations

import re

import numpy as np

from .ca import Grid

_HEADER = re.compile(r"^\s*x\s*=\s*(\d+)\s*,\s*y\s*=\s*(\d+)\s*(?:,\s*rule\s*=\s*(\S+))?\s*$")
_CXRLE = re.compile(r"^#CXRLE\b(.*)$")
_SYMBOLS = {".": 0, "b": 0, "o": 1, "A": 1, "B": 2, "C": 3, "D": 4, "E": 5}
_LETTERS = ".ABCDE"
LINE_WIDTH = 70


class RLEError(ValueError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


def parse_matrix(text: str):
    """Parse RLE into (matrix, x0, y0, time, rule).

    The matrix has the header's declared width and height, so trailing dead
    rows and columns survive the round trip.
    """
    lines = text.splitlines()
    x0 = y0 = time = 0
    header = None
    body_start = None
    for i, line in enumerate(lines):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            m = _CXRLE.match(stripped)
            if m:
                for tok in m.group(1).split():
                    key, _, val = tok.partition("=")
                    try:
                        if key == "Pos":
                            sx, sy = val.split(",")
                            x0, y0 = int(sx), int(sy)
                        elif key == "Gen":
                            time = int(val)
                    except ValueError:
                        raise RLEError(f"bad #CXRLE field {tok!r}", i + 1) from None
            continue
        m = _HEADER.match(stripped)
        if not m:
            raise RLEError(f"expected header 'x = W, y = H', got {stripped!r}", i + 1, 1)
        header = (int(m.group(1)), int(m.group(2)), m.group(3))
        body_start = i + 1
        break
    if header is None:
        raise RLEError("missing header")
    width, height, rule = header

    matrix = np.zeros((height, width), np.uint8)
    row = col = 0
    count = ""
    finished = False
    for li in range(body_start, len(lines)):
        line = lines[li]
        if line.lstrip().startswith("#"):
            continue
        for ci, ch in enumerate(line):
            if finished:
                break
            if ch.isspace():
                continue
            if ch.isdigit():
                count += ch
                continue
            n = int(count) if count else 1
            count = ""
            if ch == "!":
                finished = True
            elif ch == "$":
                row += n
                col = 0
            elif ch in _SYMBOLS:
                state = _SYMBOLS[ch]
                if col + n > width or row >= height:
                    raise RLEError(f"cell run outside declared {width}x{height} box",
                                   li + 1, ci + 1)
                if state:
                    matrix[row, col:col + n] = state
                col += n
            else:
                raise RLEError(f"unexpected character {ch!r}", li + 1, ci + 1)
        if finished:
            break
    if not finished:
        last = len(lines)
        col_end = len(lines[-1]) + 1 if lines else 1
        raise RLEError(f"truncated body: no terminating '!' (row {row}, column {col})",
                       last, col_end)
    return matrix, x0, y0, time, rule


def parse_rle(text: str) -> Grid:
    matrix, x0, y0, time, _ = parse_matrix(text)
    return Grid.from_array(matrix, x0, y0, time)


def emit_matrix(matrix, rule: str | None = None, x0: int | None = None,
                y0: int | None = None, time: int | None = None) -> str:
    m = np.asarray(matrix)
    height, width = m.shape
    out = []
    if x0 is not None or time is not None:
        fields = []
        if x0 is not None:
            fields.append(f"Pos={x0},{y0}")
        if time is not None:
            fields.append(f"Gen={time}")
        out.append("#CXRLE " + " ".join(fields))
    out.append(f"x = {width}, y = {height}" + (f", rule = {rule}" if rule else ""))

    tokens = []
    pending_rows = 0
    for r in range(height):
        runs = []
        c = 0
        while c < width:
            s = int(m[r, c])
            e = c
            while e < width and m[r, e] == s:
                e += 1
            runs.append((e - c, s))
            c = e
        if runs and runs[-1][1] == 0:
            runs.pop()
        if not runs:
            pending_rows += 1
            continue
        if tokens or pending_rows:
            gap = pending_rows + (1 if tokens else 0)
            if gap:
                tokens.append(f"{gap if gap > 1 else ''}$")
        pending_rows = 0
        for n, s in runs:
            tokens.append(f"{n if n > 1 else ''}{_LETTERS[s]}")
    tokens.append("!")

    line = ""
    for tok in tokens:
        if len(line) + len(tok) > LINE_WIDTH:
            out.append(line)
            line = ""
        line += tok
    out.append(line)
    return "\n".join(out) + "\n"


def emit_rle(grid: Grid, rule: str | None = None) -> str:
    """Serialise a grid, recording its origin and step counter."""
    if not grid.cells:
        return emit_matrix(np.zeros((0, 0), np.uint8), rule, 0, 0, grid.time)
    matrix, x0, y0 = grid.to_array()
    return emit_matrix(matrix, rule, x0, y0, grid.time)
