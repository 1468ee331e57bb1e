import numpy as np
import pytest

from symbiotes.arena import Winner, place_contest, play, time_limit
from symbiotes.ca import CellState
from symbiotes.evolution import random_seed
from symbiotes.genome import Genome

DOT = Genome(np.ones((1, 1), np.uint8))
BLOCK = Genome(np.ones((2, 2), np.uint8))


def test_placement_of_two_dots():
    g = place_contest(DOT, DOT)
    assert g.cells == {(0, 0): CellState.RED, (2, 0): CellState.BLUE}


def test_placement_gap_and_centring():
    a = Genome(np.ones((5, 5), np.uint8))
    b = Genome(np.ones((3, 2), np.uint8))
    g = place_contest(a, b)
    blue = [c for c, s in g.cells.items() if s == CellState.BLUE]
    assert min(x for x, _ in blue) == 5 + 5
    assert min(y for _, y in blue) == 1


def test_placement_keeps_borders():
    a = Genome(np.array([[1, 5, 1]], np.uint8))
    g = place_contest(a, a)
    assert sum(s == CellState.PURPLE for s in g.cells.values()) == 2


def test_self_contest_is_mirror_symmetric():
    a = Genome(np.array([[1, 0, 1], [1, 1, 0]], np.uint8))
    g = place_contest(a, a)
    red = {c for c, s in g.cells.items() if s == CellState.RED}
    blue = {(x - 6, y) for (x, y), s in g.cells.items() if s == CellState.BLUE}
    assert red == blue


def test_time_limit():
    ten = Genome(np.array([[1] * 10], np.uint8))
    forty = Genome(np.array([[1] * 40], np.uint8))
    assert time_limit(ten, ten) == 1000
    assert time_limit(forty, forty) == 1600


def test_dots_tie():
    out = play(DOT, DOT)
    assert (out.growth_red, out.growth_blue, out.winner) == (-1, -1, Winner.TIE)
    assert out.score() == 0.5


def test_block_beats_dot():
    out = play(BLOCK, DOT)
    assert (out.growth_red, out.growth_blue, out.winner) == (0, -1, Winner.RED)
    assert out.steps_played == 1000


def _mirror_symmetric(rng):
    g = random_seed(rng, (5, 3))
    return Genome(np.hstack([g.cells, g.cells[:, -2::-1]]))


def test_colour_swap_antisymmetry(rng):
    """Exact when the two placements are mirror images of each other."""
    swap = {Winner.RED: Winner.BLUE, Winner.BLUE: Winner.RED, Winner.TIE: Winner.TIE}
    for _ in range(40):
        a, b = _mirror_symmetric(rng), _mirror_symmetric(rng)
        ab, ba = play(a, b), play(b, a)
        assert (ba.growth_red, ba.growth_blue) == (ab.growth_blue, ab.growth_red)
        assert ba.winner is swap[ab.winner]


def test_determinism(rng):
    a, b = random_seed(rng), random_seed(rng)
    assert play(a, b) == play(a, b)


def test_self_play_is_tie_for_random_seeds(rng):
    # mirror placement; a tie is expected but not guaranteed once the two
    # copies interact, so only count how often it holds
    ties = sum(play(g, g).winner is Winner.TIE for g in (random_seed(rng) for _ in range(40)))
    assert ties >= 20
