import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from symbiotes.ca import CellState, Grid
from symbiotes.rle import RLEError, emit_matrix, emit_rle, parse_matrix, parse_rle


def test_single_cell():
    g = parse_rle("x = 1, y = 1\nA!")
    assert g.cells == {(0, 0): CellState.RED}


def test_classic_glider_with_o_and_b():
    g = parse_rle("#N Glider\nx = 3, y = 3, rule = B3/S23\nbob$2bo$3o!\n")
    assert set(g.cells) == {(1, 0), (2, 1), (0, 2), (1, 2), (2, 2)}


def test_multistate_and_row_gaps():
    matrix, *_ = parse_matrix("x = 4, y = 4\n.A2B3$E3.!")
    expected = np.zeros((4, 4), np.uint8)
    expected[0, 1] = 1
    expected[0, 2:4] = 2
    expected[3, 0] = 5
    assert (matrix == expected).all()


def test_position_and_time_round_trip():
    g = Grid({(-5, 7): CellState.ORANGE, (-3, 9): CellState.GREEN}, time=42)
    text = emit_rle(g)
    assert text.startswith("#CXRLE Pos=-5,7 Gen=42")
    assert parse_rle(text) == g


def test_empty_grid_round_trip():
    g = Grid({}, time=3)
    assert parse_rle(emit_rle(g)) == g


def test_truncated_body_is_reported():
    with pytest.raises(RLEError) as err:
        parse_rle("x = 3, y = 3\nbob$2bo")
    assert err.value.line == 2


@pytest.mark.parametrize("text", ["", "y = 3\n!", "x = 2, y = 1\n3A!", "x = 2, y = 1\nAZ!"])
def test_malformed(text):
    with pytest.raises(RLEError):
        parse_rle(text)


def test_long_rows_wrap():
    m = np.tile(np.array([1, 0, 2], np.uint8), (3, 60))
    text = emit_matrix(m)
    assert max(len(line) for line in text.splitlines()) <= 70
    assert (parse_matrix(text)[0] == m).all()



@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(-1000, 1000), st.integers(-1000, 1000),
       st.integers(0, 5))
def test_parse_emit_round_trip(seed, x0, y0, time):
    r = np.random.default_rng(seed)
    h, w = int(r.integers(1, 25)), int(r.integers(1, 25))
    m = np.where(r.random((h, w)) < 0.4, r.integers(1, 5, size=(h, w)), 0).astype(np.uint8)
    g = Grid.from_array(m, x0, y0, time)
    assert parse_rle(emit_rle(g)) == g


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_emit_canonicalises(seed):
    r = np.random.default_rng(seed)
    h, w = int(r.integers(1, 15)), int(r.integers(1, 15))
    m = np.where(r.random((h, w)) < 0.5, r.integers(1, 6, size=(h, w)), 0).astype(np.uint8)
    # a hand-made non-canonical spelling: one symbol per cell, every row ended
    rows = ["".join(".ABCDE"[v] for v in row) for row in m]
    text = f"x = {w}, y = {h}\n" + "$\n".join(rows) + "!"
    once = emit_matrix(parse_matrix(text)[0])
    assert emit_matrix(parse_matrix(once)[0]) == once
    assert (parse_matrix(once)[0] == m).all()
