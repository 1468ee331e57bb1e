"""The three games side by side.

Same live/dead dynamics, different colouring. We run one random two-colour
seed under each ruleset, then check that dropping the colours gives the
same picture every time.
"""
import numpy as np

from symbiotes.ca import Grid, Ruleset, census, project_binary, run
from symbiotes.rle import emit_rle

rng = np.random.default_rng(0)
seed = np.where(rng.random((16, 16)) < 0.375, rng.choice([1, 2], (16, 16)), 0)
seed[:, 8] = 5  # purple border down the middle, gone after one step
start = Grid.from_array(seed.astype(np.uint8))

finals = {}
for rs in Ruleset:
    finals[rs] = run(start, 1000, rs)
    print(f"{rs.name:12s} census at t=1000: {census(finals[rs])}")

life = finals[Ruleset.LIFE]
for rs in (Ruleset.IMMIGRATION, Ruleset.MANAGEMENT):
    print(rs.name, "same ash as Life:", project_binary(finals[rs]).same_cells(life))

# paste this into Golly to look at the Management ash
print(emit_rle(finals[Ruleset.MANAGEMENT]))
