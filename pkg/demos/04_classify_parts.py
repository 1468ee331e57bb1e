"""Label each part of a symbiote.

Focal part red, the others blue, borders purple; 1000 Management steps.
Then the same part alone for 1000 Life steps.
"""
import numpy as np

from symbiotes.analysis import classify_symbiote, recolour_focal
from symbiotes.evolution import fuse_layer4, random_seed
from symbiotes.rle import emit_rle

rng = np.random.default_rng(8)
parts = [random_seed(rng) for _ in range(3)]
symbiote = fuse_layer4(fuse_layer4(parts[0], parts[1]), parts[2])
print(symbiote.cells)

print(emit_rle(recolour_focal(symbiote, 0), rule="Management"))

print("part  role     benefit   interaction  inside  alone  (dR, dB, dO, dG)")
for i, c in enumerate(classify_symbiote(symbiote)):
    print(f"{i:4d}  {c.role.value:8s} {c.benefit.value:9s} {c.interaction.value:12s}"
          f"{float(c.growth_inside):7.2f} {c.growth_alone:6d}  {c.colour_deltas}")
