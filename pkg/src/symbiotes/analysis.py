"""Species extraction and part classification for evolved symbiotes.

A species is the family tree below one fusion event. From each species with
at least two members, the member with the most children and the one with
the fewest are paired. Each part of each paired symbiote is then labelled
three ways by re-running the seed with that part coloured red and the rest
blue in the Management Game:

* manager / worker: more orange than green at the end?
* insider / outsider: does the part grow more inside the symbiote
  (colour-weighted) than on its own?
* ensemblist / soloist: does orange plus green growth beat red growth?
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np

from .ca import CellState, ColourCensus, Grid, Ruleset, advance_arrays, run, census
from .evolution import Provenance, RunArchive
from .genome import MAX_PARTS, Genome
from .stats import ContingencyTable, fisher_exact

ANALYSIS_STEPS = 1000
WEIGHTS = {"red": Fraction(1), "blue": Fraction(0), "orange": Fraction(2, 3),
           "green": Fraction(1, 3)}


class Role(enum.Enum):
    MANAGER = "Manager"
    WORKER = "Worker"


class Benefit(enum.Enum):
    INSIDER = "Insider"
    OUTSIDER = "Outsider"


class Interaction(enum.Enum):
    ENSEMBLIST = "Ensemblist"
    SOLOIST = "Soloist"


@dataclass
class Species:
    root_id: int
    member_ids: list = field(default_factory=list)
    part_count: int = 2


@dataclass(frozen=True)
class SpeciesPair:
    root_id: int
    most_prolific: int
    least_prolific: int
    part_count: int


@dataclass(frozen=True)
class PartClassification:
    role: Role
    benefit: Benefit
    interaction: Interaction
    growth_inside: Fraction
    growth_alone: int
    colour_deltas: tuple


def worker_threads() -> int:
    """Worker cap from SYMBIOTE_THREADS, else the CPU count."""
    env = os.environ.get("SYMBIOTE_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def parallel_map(fn: Callable, items: Sequence, threads: int | None = None) -> list:
    threads = worker_threads() if threads is None else threads
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(threads) as pool:
        return list(pool.map(fn, items))


# -- species ------------------------------------------------------------------

def build_species(archive: RunArchive) -> list[Species]:
    """Partition symbiote records into species, in birth order.

    A fusion birth roots a new species. Any other symbiote joins the species
    of its first parent.
    """
    species: dict[int, Species] = {}
    home: dict[int, int] = {}
    for r in archive.records:
        if r.part_count < 2:
            continue
        if r.provenance is Provenance.FUSION:
            species[r.id] = Species(r.id, [r.id], r.part_count)
            home[r.id] = r.id
        else:
            root = home.get(r.parent_ids[0]) if r.parent_ids else None
            if root is None:
                raise ValueError(f"symbiote {r.id} has no fusion ancestor in the archive")
            species[root].member_ids.append(r.id)
            home[r.id] = root
    return list(species.values())


def prolific_pairs(species_list: Sequence[Species], children: Mapping[int, int],
                   birth_index: Mapping[int, int] | None = None) -> list[SpeciesPair]:
    """Most and least prolific member of every species with 2+ members.

    Ties on child count go to the lower birth index for both picks.
    """
    order = birth_index or {}
    pairs = []
    for sp in species_list:
        if len(sp.member_ids) < 2:
            continue
        most = min(sp.member_ids, key=lambda i: (-children[i], order.get(i, i)))
        least = min(sp.member_ids, key=lambda i: (children[i], order.get(i, i)))
        pairs.append(SpeciesPair(sp.root_id, most, least, sp.part_count))
    return pairs


# -- classification -------------------------------------------------------------

def recolour_focal(symbiote: Genome, part_index: int) -> Grid:
    """t = 0 Management grid: focal part red, other parts blue, borders purple."""
    if not 0 <= part_index < symbiote.part_count:
        raise IndexError(f"part index {part_index} out of range for "
                         f"{symbiote.part_count} parts")
    colours = np.where(symbiote.cells == CellState.PURPLE, CellState.PURPLE, 0).astype(np.uint8)
    live = symbiote.cells == CellState.RED
    for i, part in enumerate(symbiote.parts):
        sl = part.slice()
        colours[sl][live[sl]] = CellState.RED if i == part_index else CellState.BLUE
    return Grid.from_array(colours)


def weighted_growth(initial: ColourCensus, final: ColourCensus) -> Fraction:
    """Colour-weighted growth with red 1, blue 0, orange 2/3, green 1/3."""
    d = final - initial
    return (WEIGHTS["red"] * d.red + WEIGHTS["blue"] * d.blue
            + WEIGHTS["orange"] * d.orange + WEIGHTS["green"] * d.green)


def role_from_census(final: ColourCensus) -> Role:
    return Role.MANAGER if final.orange > final.green else Role.WORKER


def benefit_from_growth(inside, alone) -> Benefit:
    return Benefit.INSIDER if inside > alone else Benefit.OUTSIDER


def interaction_from_deltas(deltas: ColourCensus) -> Interaction:
    if deltas.orange + deltas.green > deltas.red:
        return Interaction.ENSEMBLIST
    return Interaction.SOLOIST


def _grow(matrix: np.ndarray, steps: int, ruleset: Ruleset) -> int:
    ys, xs = np.nonzero(matrix == CellState.RED)
    out = advance_arrays(xs.astype(np.int64), ys.astype(np.int64),
                         np.ones(len(xs), np.int8), steps, ruleset)
    return len(out[0]) - len(xs)


def solo_growth(symbiote: Genome, part_index: int, steps: int = ANALYSIS_STEPS) -> int:
    """Live-cell growth of one part run on its own."""
    return _grow(symbiote.part_matrix(part_index), steps, Ruleset.LIFE)


def seed_growth(genome: Genome, steps: int = ANALYSIS_STEPS) -> int:
    """Live-cell growth of a whole seed run on its own."""
    return _grow(genome.cells, steps, Ruleset.LIFE)


def inside_run(symbiote: Genome, part_index: int,
               steps: int = ANALYSIS_STEPS) -> tuple[ColourCensus, ColourCensus]:
    """(initial, final) censuses of the focal-part Management run."""
    start = recolour_focal(symbiote, part_index)
    return census(start), census(run(start, steps, Ruleset.MANAGEMENT))


def classify_part(symbiote: Genome, part_index: int,
                  steps: int = ANALYSIS_STEPS) -> PartClassification:
    initial, final = inside_run(symbiote, part_index, steps)
    # only the focal colour is credited; blue carries weight 0 anyway
    deltas = final - initial
    inside = weighted_growth(initial, final)
    alone = solo_growth(symbiote, part_index, steps)
    return PartClassification(role_from_census(final), benefit_from_growth(inside, alone),
                              interaction_from_deltas(deltas), inside, alone,
                              (deltas.red, deltas.blue, deltas.orange, deltas.green))


def classify_role(symbiote: Genome, part_index: int, steps: int = ANALYSIS_STEPS) -> Role:
    _, final = inside_run(symbiote, part_index, steps)
    return role_from_census(final)


def classify_benefit(symbiote: Genome, part_index: int,
                     steps: int = ANALYSIS_STEPS) -> Benefit:
    initial, final = inside_run(symbiote, part_index, steps)
    return benefit_from_growth(weighted_growth(initial, final),
                               solo_growth(symbiote, part_index, steps))


def classify_interaction(symbiote: Genome, part_index: int,
                         steps: int = ANALYSIS_STEPS) -> Interaction:
    initial, final = inside_run(symbiote, part_index, steps)
    return interaction_from_deltas(final - initial)


def classify_symbiote(symbiote: Genome, steps: int = ANALYSIS_STEPS) -> list[PartClassification]:
    return [classify_part(symbiote, i, steps) for i in range(symbiote.part_count)]


# -- tables -------------------------------------------------------------------------

def label_counts(parts: Sequence[PartClassification], label) -> tuple[int, int]:
    """(number of parts carrying ``label``, number of other parts)."""
    attr = {Role: "role", Benefit: "benefit", Interaction: "interaction"}[type(label)]
    m = sum(getattr(p, attr) is label for p in parts)
    return m, len(parts) - m


def count_matrix(seeds: Sequence[Sequence[PartClassification]], label) -> np.ndarray:
    """6x6 matrix: entry [M, N] counts seeds with M parts labelled ``label``
    and N parts not so labelled."""
    out = np.zeros((MAX_PARTS + 1, MAX_PARTS + 1), np.int64)
    for parts in seeds:
        m, n = label_counts(parts, label)
        if not 2 <= m + n <= MAX_PARTS:
            raise ValueError(f"seed with {m + n} parts cannot be tabulated")
        out[m, n] += 1
    return out


def role_matrix(seeds: Sequence[Sequence[PartClassification]]) -> np.ndarray:
    """Seeds by (managers, workers)."""
    return count_matrix(seeds, Role.MANAGER)


def diff_matrix(most: np.ndarray, least: np.ndarray) -> np.ndarray:
    return np.asarray(most, np.int64) - np.asarray(least, np.int64)


def row_totals(matrix: np.ndarray) -> np.ndarray:
    return np.asarray(matrix).sum(axis=1)


def column_totals(matrix: np.ndarray) -> np.ndarray:
    return np.asarray(matrix).sum(axis=0)


@dataclass(frozen=True)
class FisherResult:
    name: str
    table: ContingencyTable
    odds_ratio: float
    p_value: float


# focal categories: (name, label, required count of that label)
FOCAL_TESTS = (
    ("one_manager", Role.MANAGER, 1),
    ("zero_outsiders", Benefit.OUTSIDER, 0),
    ("two_outsiders", Benefit.OUTSIDER, 2),
    ("zero_soloists", Interaction.SOLOIST, 0),
    ("one_soloist", Interaction.SOLOIST, 1),
)


def focal_table(most: Sequence[Sequence[PartClassification]],
                least: Sequence[Sequence[PartClassification]], label, count: int
                ) -> ContingencyTable:
    """Rows most/least prolific; columns in / not in the focal category."""
    def split(group):
        hit = sum(label_counts(parts, label)[0] == count for parts in group)
        return hit, len(group) - hit
    a, b = split(most)
    c, d = split(least)
    return ContingencyTable(a, b, c, d)


def fisher_tests(most, least) -> list[FisherResult]:
    results = []
    for name, label, count in FOCAL_TESTS:
        table = focal_table(most, least, label, count)
        p = fisher_exact(table) if table.total else float("nan")
        results.append(FisherResult(name, table, table.odds_ratio(), p))
    return results


@dataclass(frozen=True)
class GrowthRow:
    part_count: object
    least_mean: float
    most_mean: float
    least_count: int
    most_count: int


def growth_summary(pairs: Sequence[SpeciesPair], genomes: Mapping[int, Genome],
                   steps: int = ANALYSIS_STEPS, threads: int | None = None
                   ) -> list[GrowthRow]:
    """Mean isolated growth of least and most prolific seeds by part count."""
    if not pairs:
        return []
    ids = sorted({p.most_prolific for p in pairs} | {p.least_prolific for p in pairs})
    growth = dict(zip(ids, parallel_map(lambda i: seed_growth(genomes[i], steps), ids,
                                        threads)))
    rows = []
    groups = [(k, [p for p in pairs if p.part_count == k])
              for k in range(MAX_PARTS, 1, -1)]
    groups.append(("all", list(pairs)))
    for key, group in groups:
        if not group:
            continue
        least = [growth[p.least_prolific] for p in group]
        most = [growth[p.most_prolific] for p in group]
        rows.append(GrowthRow(key, float(np.mean(least)), float(np.mean(most)),
                              len(least), len(most)))
    return rows


# -- full pipeline ---------------------------------------------------------------

@dataclass
class AnalysisResult:
    species: list
    pairs: list
    children: dict
    classifications: dict          # seed id -> list[PartClassification]
    growth: list                   # GrowthRow
    matrices: dict                 # name -> 6x6 matrix
    fisher: list                   # FisherResult

    def most(self):
        return [self.classifications[p.most_prolific] for p in self.pairs]

    def least(self):
        return [self.classifications[p.least_prolific] for p in self.pairs]


def label_matrices(most, least) -> dict:
    out = {}
    for name, label in (("managers", Role.MANAGER), ("outsiders", Benefit.OUTSIDER),
                        ("soloists", Interaction.SOLOIST)):
        m = count_matrix(most, label)
        n = count_matrix(least, label)
        out[f"{name}_most"] = m
        out[f"{name}_least"] = n
        out[f"{name}_diff"] = diff_matrix(m, n)
    return out


def analyze_pairs(pairs: Sequence[SpeciesPair], genomes: Mapping[int, Genome],
                  steps: int = ANALYSIS_STEPS, threads: int | None = None):
    ids = sorted({p.most_prolific for p in pairs} | {p.least_prolific for p in pairs})
    jobs = [(i, k) for i in ids for k in range(genomes[i].part_count)]
    labels = parallel_map(lambda job: classify_part(genomes[job[0]], job[1], steps), jobs,
                          threads)
    classifications = {i: [] for i in ids}
    for (i, _), c in zip(jobs, labels):
        classifications[i].append(c)
    most = [classifications[p.most_prolific] for p in pairs]
    least = [classifications[p.least_prolific] for p in pairs]
    return classifications, label_matrices(most, least), fisher_tests(most, least)


def analyze(archive: RunArchive, steps: int = ANALYSIS_STEPS,
            threads: int | None = None) -> AnalysisResult:
    species = build_species(archive)
    children = archive.children_counts()
    births = {r.id: r.birth_index for r in archive.records}
    pairs = prolific_pairs(species, children, births)
    genomes = {r.id: r.genome for r in archive.records}
    classifications, matrices, fisher = analyze_pairs(pairs, genomes, steps, threads)
    growth = growth_summary(pairs, genomes, steps, threads)
    return AnalysisResult(species, pairs, children, classifications, growth, matrices, fisher)


def pool_archives(archives: Sequence[RunArchive]) -> tuple[list, dict]:
    """Species pairs and genomes from several runs, with ids made unique."""
    pairs = []
    genomes = {}
    for run_no, archive in enumerate(archives):
        offset = run_no * 10 ** 9
        species = build_species(archive)
        births = {r.id: r.birth_index for r in archive.records}
        for p in prolific_pairs(species, archive.children_counts(), births):
            pairs.append(SpeciesPair(p.root_id + offset, p.most_prolific + offset,
                                     p.least_prolific + offset, p.part_count))
        for r in archive.records:
            genomes[r.id + offset] = r.genome
    return pairs, genomes
