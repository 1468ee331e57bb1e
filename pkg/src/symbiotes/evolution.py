"""Steady-state (GENITOR-style) evolution of seed patterns with fusion.

Every birth goes through the layered reproduction pipeline:

* fusion (rare): two tournament winners are joined side by side with a
  purple border between them, making a symbiote;
* otherwise crossover (often): two tournament winners are recombined if
  they are similar enough, else the first one is passed on unchanged;
* otherwise a single tournament winner is copied;

and non-fused children are then resized (add/remove a row or column) and
mutated (bit flips). The child is scored against the current population and
replaces its least fit member.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import asdict, dataclass, field, fields
from typing import Optional, Sequence

import numpy as np

from .arena import TIME_LIMIT_FLOOR, TIME_LIMIT_SLOPE, play
from .ca import DEFAULT_EXTENT, CellState
from .genome import MAX_PARTS, Genome

log = logging.getLogger(__name__)


@dataclass
class EvolutionConfig:
    population_size: int = 200
    generations: int = 100
    initial_seed_dims: tuple = (5, 5)
    initial_density: float = 0.375
    tournament_size: int = 2
    mutation_rate: float = 0.01
    resize_probability: float = 0.2
    crossover_probability: float = 0.8
    fusion_probability: float = 0.005
    similarity_threshold: float = 0.8
    rng_seed: int = 0
    force_mutation: bool = True
    max_parts: int = MAX_PARTS
    time_limit_floor: int = TIME_LIMIT_FLOOR
    time_limit_slope: int = TIME_LIMIT_SLOPE
    extent: int = DEFAULT_EXTENT

    def __post_init__(self):
        self.initial_seed_dims = tuple(int(d) for d in self.initial_seed_dims)
        for name in ("initial_density", "mutation_rate", "resize_probability",
                     "crossover_probability", "fusion_probability", "similarity_threshold"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        if self.population_size < 2:
            raise ValueError("population_size must be at least 2")
        if self.generations < 0:
            raise ValueError("generations must be non-negative")
        if self.tournament_size < 1:
            raise ValueError("tournament_size must be positive")
        if len(self.initial_seed_dims) != 2 or min(self.initial_seed_dims) < 1:
            raise ValueError("initial_seed_dims must be two positive integers")
        if not 1 <= self.max_parts <= MAX_PARTS:
            raise ValueError(f"max_parts must be in 1..{MAX_PARTS}")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["initial_seed_dims"] = list(self.initial_seed_dims)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> EvolutionConfig:
        known = {f.name: f for f in fields(cls)}
        unknown = set(d) - set(known)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)


class Provenance(enum.Enum):
    INITIAL_RANDOM = "InitialRandom"
    MUTATION = "Mutation"
    RESIZE = "Resize"
    CROSSOVER = "Crossover"
    FUSION = "Fusion"


@dataclass
class Individual:
    genome: Genome
    fitness: float
    children_count: int = 0

    @property
    def id(self) -> int:
        return self.genome.id


@dataclass
class LineageRecord:
    id: int
    parent_ids: tuple
    provenance: Provenance
    part_count: int
    genome: Genome
    birth_index: int
    fitness_at_birth: float


@dataclass
class RunArchive:
    config: EvolutionConfig
    records: list = field(default_factory=list)

    def append(self, record: LineageRecord):
        if self.records and record.birth_index <= self.records[-1].birth_index:
            raise ValueError("birth_index must increase")
        self.records.append(record)

    def by_id(self) -> dict:
        return {r.id: r for r in self.records}

    def children_counts(self) -> dict:
        counts = {r.id: 0 for r in self.records}
        for r in self.records:
            for p in r.parent_ids:
                counts[p] += 1
        return counts


class NoMatch(Exception):
    pass


def random_seed(rng: np.random.Generator, dims=(5, 5), density: float = 0.375,
                max_tries: int = 1000) -> Genome:
    """Random single-part seed; all-dead draws are redrawn."""
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    h, w = dims
    for _ in range(max_tries):
        cells = (rng.random((h, w)) < density).astype(np.uint8)
        if cells.any():
            return Genome(cells)
    raise RuntimeError(f"no live cell drawn in {max_tries} tries at density {density}")


def tournament_select(population: Sequence[Individual], rng: np.random.Generator,
                      size: int = 2) -> Individual:
    k = min(size, len(population))
    picks = rng.choice(len(population), size=k, replace=False)
    return min((population[i] for i in picks), key=lambda ind: (-ind.fitness, ind.id))


def mutate_layer1(genome: Genome, rng: np.random.Generator, rate: float = 0.01,
                  force: bool = True) -> Genome:
    """Flip each non-border cell with probability ``rate``."""
    cells = genome.cells.copy()
    free = cells != CellState.PURPLE
    flips = (rng.random(cells.shape) < rate) & free
    if force and not flips.any():
        ys, xs = np.nonzero(free)
        i = rng.integers(len(ys))
        flips[ys[i], xs[i]] = True
    cells[flips] ^= 1
    return genome.with_cells(cells)


def _part_end(genome: Genome, part: int) -> int:
    p = genome.parts[part]
    return p.x_offset + p.width


def resize_layer2(genome: Genome, rng: np.random.Generator,
                  probability: float = 0.2) -> tuple[Genome, bool]:
    """Maybe add or remove one row or column. Returns (genome, resized).

    Rows are added or removed at the bottom. Column moves pick a part at
    random and act on its rightmost column, so borders are never removed.
    """
    if rng.random() >= probability:
        return genome, False
    cells = genome.cells
    border_cols = (cells == CellState.PURPLE).all(axis=0)
    moves = ["append_row", "append_column"]
    if genome.height > 1:
        moves.append("remove_row")
    shrinkable = [i for i, p in enumerate(genome.parts) if p.width > 1]
    if shrinkable:
        moves.append("remove_column")
    move = moves[rng.integers(len(moves))]
    if move == "append_row":
        row = np.where(border_cols, CellState.PURPLE, CellState.WHITE).astype(np.uint8)
        new = np.vstack([cells, row[None, :]])
    elif move == "remove_row":
        new = cells[:-1]
    elif move == "append_column":
        part = int(rng.integers(genome.part_count))
        new = np.insert(cells, _part_end(genome, part), 0, axis=1)
    else:
        part = shrinkable[rng.integers(len(shrinkable))]
        new = np.delete(cells, _part_end(genome, part) - 1, axis=1)
    return Genome(new), True


def similarity(a: Genome, b: Genome) -> float:
    return (min(a.width, b.width) / max(a.width, b.width)
            * min(a.height, b.height) / max(a.height, b.height))


def crossover_layer3(a: Genome, b: Genome, rng: np.random.Generator,
                     threshold: float = 0.8) -> Genome:
    """Copy ``a`` and paste in a random rectangle of ``b``.

    Raises NoMatch when part counts differ or the shapes are too dissimilar.
    Cells that are a border in either parent keep ``a``'s value, so the
    child keeps ``a``'s part layout.
    """
    if a.part_count != b.part_count or similarity(a, b) < threshold:
        raise NoMatch
    w = min(a.width, b.width)
    h = min(a.height, b.height)
    x0 = int(rng.integers(w))
    x1 = int(rng.integers(x0 + 1, w + 1))
    y0 = int(rng.integers(h))
    y1 = int(rng.integers(y0 + 1, h + 1))
    cells = a.cells.copy()
    block_a = cells[y0:y1, x0:x1]
    block_b = b.cells[y0:y1, x0:x1]
    take = (block_a != CellState.PURPLE) & (block_b != CellState.PURPLE)
    block_a[take] = block_b[take]
    return a.with_cells(cells)


def _pad_rows(cells: np.ndarray, height: int) -> np.ndarray:
    h, w = cells.shape
    top = (height - h) // 2
    bottom = height - h - top
    border = (cells == CellState.PURPLE).all(axis=0)
    filler = np.where(border, CellState.PURPLE, CellState.WHITE).astype(np.uint8)
    return np.vstack([np.tile(filler, (top, 1)), cells, np.tile(filler, (bottom, 1))])


def fuse_layer4(a: Genome, b: Genome, max_parts: int = MAX_PARTS) -> Genome:
    """Join ``a`` and ``b`` side by side with a purple border column."""
    if a.part_count + b.part_count > max_parts:
        raise ValueError(f"fusion would give {a.part_count + b.part_count} parts "
                         f"(cap {max_parts})")
    height = max(a.height, b.height)
    border = np.full((height, 1), CellState.PURPLE, np.uint8)
    return Genome(np.hstack([_pad_rows(a.cells, height), border, _pad_rows(b.cells, height)]))


def fitness(genome: Genome, population: Sequence[Individual],
            config: Optional[EvolutionConfig] = None) -> float:
    """Mean contest score of ``genome`` (as red) against every member.

    A member that is the very same genome object scores 0.5 without a game.
    """
    config = config or EvolutionConfig()
    total = 0.0
    for member in population:
        other = member.genome if isinstance(member, Individual) else member
        if other is genome:
            total += 0.5
            continue
        total += play(genome, other, config.time_limit_floor, config.time_limit_slope,
                      config.extent).score()
    return total / len(population)


class EvolutionState:
    """Population, archive and RNG of one run in progress."""

    def __init__(self, config: EvolutionConfig):
        self.config = config
        self.rng = np.random.default_rng(config.rng_seed)
        self.population: list[Individual] = []
        self.archive = RunArchive(config)
        self.next_index = 0

    def _register(self, genome: Genome) -> Genome:
        genome.id = genome.birth_index = self.next_index
        self.next_index += 1
        return genome

    def seed_population(self):
        """Generation zero: random seeds, each scored against all of them."""
        cfg = self.config
        genomes = [self._register(random_seed(self.rng, cfg.initial_seed_dims,
                                              cfg.initial_density))
                   for _ in range(cfg.population_size)]
        members = [Individual(g, 0.0) for g in genomes]
        for ind in members:
            ind.fitness = fitness(ind.genome, members, cfg)
        self.population = members
        for ind in members:
            self.archive.append(LineageRecord(ind.id, (), Provenance.INITIAL_RANDOM,
                                              ind.genome.part_count, ind.genome,
                                              ind.genome.birth_index, ind.fitness))

    def _select(self) -> Individual:
        return tournament_select(self.population, self.rng, self.config.tournament_size)

    def reproduce_once(self) -> LineageRecord:
        cfg = self.config
        rng = self.rng
        child = None
        if rng.random() < cfg.fusion_probability:
            a, b = self._select(), self._select()
            try:
                child = fuse_layer4(a.genome, b.genome, cfg.max_parts)
                parents, provenance = (a, b), Provenance.FUSION
            except ValueError:
                child = None
        if child is None:
            if rng.random() < cfg.crossover_probability:
                a, b = self._select(), self._select()
                try:
                    genome = crossover_layer3(a.genome, b.genome, rng, cfg.similarity_threshold)
                    parents, provenance = (a, b), Provenance.CROSSOVER
                except NoMatch:
                    genome = a.genome
                    parents, provenance = (a,), Provenance.MUTATION
            else:
                a = self._select()
                genome = a.genome
                parents, provenance = (a,), Provenance.MUTATION
            genome, resized = resize_layer2(genome, rng, cfg.resize_probability)
            if resized and provenance is Provenance.MUTATION:
                provenance = Provenance.RESIZE
            child = mutate_layer1(genome, rng, cfg.mutation_rate, cfg.force_mutation)

        self._register(child)
        score = fitness(child, self.population, cfg)
        for p in parents:
            p.children_count += 1
        newborn = Individual(child, score)
        worst = min(range(len(self.population)),
                    key=lambda i: (self.population[i].fitness,
                                   self.population[i].genome.birth_index))
        self.population[worst] = newborn
        record = LineageRecord(child.id, tuple(p.id for p in parents), provenance,
                               child.part_count, child, child.birth_index, score)
        self.archive.append(record)
        return record


def evolve(config: EvolutionConfig) -> RunArchive:
    """Generation zero plus ``generations * population_size`` births."""
    state = EvolutionState(config)
    state.seed_population()
    for gen in range(config.generations):
        for _ in range(config.population_size):
            state.reproduce_once()
        best = max(ind.fitness for ind in state.population)
        symbiotes = sum(ind.genome.part_count > 1 for ind in state.population)
        log.info("generation %d: best fitness %.3f, %d symbiotes", gen + 1, best, symbiotes)
    return state.archive
