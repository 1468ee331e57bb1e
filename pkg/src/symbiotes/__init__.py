"""Symbiotic seed patterns in Game-of-Life variants.

Simulation (``ca``), contests (``arena``), evolution with fusion
(``evolution``), lineage analysis (``analysis``) and their file formats.
"""

from .analysis import (Benefit, Interaction, PartClassification, Role, Species,
                       SpeciesPair, analyze, build_species, classify_part, prolific_pairs,
                       recolour_focal, weighted_growth)
from .archive import load_archive, save_archive
from .arena import GameOutcome, Winner, place_contest, play
from .ca import (CellState, ColourCensus, ExtentError, Grid, Ruleset, census,
                 project_binary, recolour_management_to_immigration, run, step)
from .evolution import EvolutionConfig, LineageRecord, Provenance, RunArchive, evolve
from .genome import Genome, PartRegion
from .rle import RLEError, emit_rle, parse_rle
from .stats import ContingencyTable, fisher_exact

__version__ = "0.1.0"
