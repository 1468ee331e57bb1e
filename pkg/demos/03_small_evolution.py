"""A small run of the evolutionary loop, with fusion turned up.

Default fusion is rare (0.005 per birth); at this scale we would see almost
no symbiotes, so we raise it for the demo.
"""
import logging
from collections import Counter

from symbiotes.archive import save_archive
from symbiotes.evolution import EvolutionConfig, evolve

logging.basicConfig(level=logging.INFO, format="%(message)s")

cfg = EvolutionConfig(population_size=20, generations=5, fusion_probability=0.05, rng_seed=1)
archive = evolve(cfg)

print(len(archive.records), "records")
print(Counter(r.provenance.value for r in archive.records))
print("part counts:", Counter(r.part_count for r in archive.records))

save_archive(archive, "demo_run.jsonl")
print("saved demo_run.jsonl; try: symbiotes analyze --archive demo_run.jsonl --out demo_reports")
