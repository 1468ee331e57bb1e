"""Weighted growth from colour deltas, using three worked example rows.

Weights: red 1, blue 0, orange 2/3, green 1/3 (kept exact).
"""
from symbiotes.analysis import (benefit_from_growth, interaction_from_deltas,
                                role_from_census, weighted_growth)
from symbiotes.ca import ColourCensus
from symbiotes.stats import ContingencyTable, fisher_exact

rows = {"A": ((-10, -15, 7, 29), 3), "C": ((-5, -20, 0, 36), 50), "E": ((-10, -8, 29, 0), 79)}
for name, (d, alone) in rows.items():
    start = ColourCensus(red=20, blue=30)
    end = ColourCensus(20 + d[0], 30 + d[1], d[2], d[3])
    w = weighted_growth(start, end)
    print(name, w, f"= {float(w):.2f}", role_from_census(end).value,
          benefit_from_growth(w, alone).value, interaction_from_deltas(end - start).value)

# most vs least prolific seeds with exactly one manager
print("p =", fisher_exact(ContingencyTable(183, 27, 143, 67)))
