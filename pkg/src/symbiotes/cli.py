"""Command-line front end: ``symbiotes <command> [options]``.

Commands::

    evolve   --config FILE --out ARCHIVE [--rng-seed N]
    analyze  --archive ARCHIVE [--archive ...] --out DIR [--steps N]
    classify --rle FILE [--steps N]
    play     --rle RED --rle BLUE [--steps N]
    fisher   A B C D
    replay   --archive ARCHIVE --id N --steps N --out DIR [--every K] [--ruleset R] [--part P]
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import analysis, archive, arena, reports
from .ca import CellState, Grid, Ruleset, run
from .evolution import EvolutionConfig, evolve
from .genome import Genome
from .rle import RLEError, emit_rle, parse_matrix
from .stats import ContingencyTable, fisher_exact


class UsageError(Exception):
    pass


def _parse_value(key: str, raw: str):
    raw = raw.strip()
    if key == "initial_seed_dims" and not raw.startswith("["):
        parts = raw.replace("x", ",").split(",")
        return [int(p) for p in parts]
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        low = raw.lower()
        if low in ("true", "false"):
            return low == "true"
        return raw


def load_config(path) -> EvolutionConfig:
    """JSON object, or flat ``key = value`` lines with ``#`` comments."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        data = json.loads(text)
    else:
        data = {}
        for n, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                key, sep, value = line.partition(":")
            if not sep:
                raise UsageError(f"{path}:{n}: expected 'key = value'")
            data[key.strip()] = _parse_value(key.strip(), value)
    return EvolutionConfig.from_dict(data)


def read_genome(path) -> Genome:
    matrix = parse_matrix(Path(path).read_text())[0]
    # any live state counts as live; colours are assigned by the caller
    live = (matrix >= CellState.RED) & (matrix <= CellState.GREEN)
    cells = matrix.copy()
    cells[live] = CellState.RED
    return Genome(cells)


# -- commands ---------------------------------------------------------------------

def cmd_evolve(args) -> int:
    config = load_config(args.config) if args.config else EvolutionConfig()
    if args.rng_seed is not None:
        config.rng_seed = args.rng_seed
    result = evolve(config)
    archive.save_archive(result, args.out)
    print(f"wrote {len(result.records)} records to {args.out}")
    return 0


def cmd_analyze(args) -> int:
    runs = [archive.load_archive(p) for p in args.archive]
    if len(runs) == 1:
        result = analysis.analyze(runs[0], args.steps)
    else:
        pairs, genomes = analysis.pool_archives(runs)
        classifications, matrices, fisher = analysis.analyze_pairs(pairs, genomes, args.steps)
        growth = analysis.growth_summary(pairs, genomes, args.steps)
        species = [s for r in runs for s in analysis.build_species(r)]
        children = {}
        for n, r in enumerate(runs):
            children.update({k + n * 10 ** 9: v for k, v in r.children_counts().items()})
        result = analysis.AnalysisResult(species, pairs, children, classifications, growth,
                                         matrices, fisher)
    reports.write_reports(result, args.out)
    print(f"{len(result.species)} species, {len(result.pairs)} pairs; reports in {args.out}")
    for f in result.fisher:
        print(f"{f.name}: table {f.table.a} {f.table.b} {f.table.c} {f.table.d} "
              f"p = {f.p_value:.4g}")
    return 0


def cmd_classify(args) -> int:
    if len(args.rle) != 1:
        raise UsageError("classify takes exactly one --rle")
    genome = read_genome(args.rle[0])
    print("part,role,benefit,interaction,growth_inside,growth_alone")
    for k, c in enumerate(analysis.classify_symbiote(genome, args.steps)):
        print(f"{k},{c.role.value},{c.benefit.value},{c.interaction.value},"
              f"{float(c.growth_inside):.2f},{c.growth_alone}")
    return 0


def cmd_play(args) -> int:
    if len(args.rle) != 2:
        raise UsageError("play takes two --rle files (red first, then blue)")
    red, blue = (read_genome(p) for p in args.rle)
    if args.steps is None:
        outcome = arena.play(red, blue)
    else:
        outcome = arena.play(red, blue, floor=args.steps, slope=0)
    print(f"winner={outcome.winner.value} growth_red={outcome.growth_red} "
          f"growth_blue={outcome.growth_blue} steps={outcome.steps_played}")
    return 0


def cmd_fisher(args) -> int:
    table = ContingencyTable(*args.entries)
    print(fisher_exact(table))
    return 0


def cmd_replay(args) -> int:
    if args.every < 1:
        raise UsageError("--every must be positive")
    records = archive.load_archive(args.archive[0]).by_id()
    if args.id not in records:
        raise UsageError(f"no record with id {args.id}")
    genome = records[args.id].genome
    ruleset = Ruleset[args.ruleset.upper()]
    if ruleset is Ruleset.MANAGEMENT:
        grid = analysis.recolour_focal(genome, args.part)
    elif ruleset is Ruleset.IMMIGRATION:
        raise UsageError("replay of a single genome supports the life and management rulesets")
    else:
        grid = Grid.from_array(genome.cells)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    t = 0
    frames = 0
    while True:
        (out / f"frame_{t:06d}.rle").write_text(emit_rle(grid))
        frames += 1
        if t >= args.steps:
            break
        dt = min(args.every, args.steps - t)
        grid = run(grid, dt, ruleset)
        t += dt
    print(f"wrote {frames} frames to {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symbiotes",
                                description="Evolve and analyse symbiotic Life seeds.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True

    e = sub.add_parser("evolve", help="run one evolution and write an archive")
    e.add_argument("--config", help="JSON or key = value file of EvolutionConfig fields")
    e.add_argument("--out", required=True, help="archive path to write")
    e.add_argument("--rng-seed", type=int, help="overrides rng_seed from the config")
    e.set_defaults(func=cmd_evolve)

    a = sub.add_parser("analyze", help="species, classifications, tables and Fisher tests")
    a.add_argument("--archive", action="append", required=True,
                   help="archive path; repeat to pool several runs")
    a.add_argument("--out", required=True, help="directory for CSV reports")
    a.add_argument("--steps", type=int, default=analysis.ANALYSIS_STEPS)
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("classify", help="label every part of one symbiote")
    c.add_argument("--rle", action="append", required=True)
    c.add_argument("--steps", type=int, default=analysis.ANALYSIS_STEPS)
    c.set_defaults(func=cmd_classify)

    g = sub.add_parser("play", help="one Immigration Game contest")
    g.add_argument("--rle", action="append", required=True)
    g.add_argument("--steps", type=int, help="fixed step budget instead of the size rule")
    g.set_defaults(func=cmd_play)

    f = sub.add_parser("fisher", help="two-tailed Fisher exact p-value of [[a, b], [c, d]]")
    f.add_argument("entries", type=int, nargs=4, metavar="N")
    f.set_defaults(func=cmd_fisher)

    r = sub.add_parser("replay", help="re-run an archived genome and export RLE frames")
    r.add_argument("--archive", action="append", required=True)
    r.add_argument("--id", type=int, required=True)
    r.add_argument("--steps", type=int, required=True)
    r.add_argument("--out", required=True, help="directory for frames")
    r.add_argument("--every", type=int, default=100, help="steps between frames")
    r.add_argument("--ruleset", choices=("life", "management"), default="life")
    r.add_argument("--part", type=int, default=0, help="focal part for management replays")
    r.set_defaults(func=cmd_replay)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")
    if getattr(args, "steps", None) is not None and args.steps < 0:
        parser.error("--steps must be non-negative")
    try:
        return args.func(args)
    except (UsageError, RLEError, archive.ArchiveError, ValueError, IndexError,
            OSError) as e:
        print(f"symbiotes {args.command}: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
