"""Two random seeds play the Immigration Game.

Growth is final count minus initial count for each colour; the bigger
grower wins. Swapping sides moves the seeds, so the result can change.
"""
import numpy as np

from symbiotes.arena import place_contest, play, time_limit
from symbiotes.evolution import random_seed
from symbiotes.rle import emit_rle

rng = np.random.default_rng(3)
a, b = random_seed(rng), random_seed(rng)
print("red seed\n", a.cells, "\nblue seed\n", b.cells)
print("time limit:", time_limit(a, b))

out = play(a, b)
print(out)
print("swapped:", play(b, a))

print(emit_rle(place_contest(a, b), rule="Immigration"))
