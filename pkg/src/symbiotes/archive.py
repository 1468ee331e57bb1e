"""Run archives as JSON lines: one header record, then one line per birth.

Genomes travel as RLE strings so any record can be pasted into Golly.
"""

from __future__ import annotations

import json
from pathlib import Path

from .evolution import EvolutionConfig, LineageRecord, Provenance, RunArchive
from .genome import Genome
from .rle import emit_matrix, parse_matrix

FORMAT = "symbiotes-archive"
VERSION = 1
GENOME_RULE = "Symbiote"


class ArchiveError(ValueError):
    pass


def genome_to_rle(genome: Genome) -> str:
    return emit_matrix(genome.cells, GENOME_RULE)


def genome_from_rle(text: str) -> Genome:
    matrix = parse_matrix(text)[0]
    return Genome(matrix)


def record_to_dict(r: LineageRecord) -> dict:
    return {
        "id": r.id,
        "parent_ids": list(r.parent_ids),
        "provenance": r.provenance.value,
        "part_count": r.part_count,
        "genome": genome_to_rle(r.genome),
        "birth_index": r.birth_index,
        "fitness_at_birth": r.fitness_at_birth,
    }


def record_from_dict(d: dict) -> LineageRecord:
    genome = genome_from_rle(d["genome"])
    genome.id = d["id"]
    genome.birth_index = d["birth_index"]
    if genome.part_count != d["part_count"]:
        raise ValueError(f"genome has {genome.part_count} parts, record says {d['part_count']}")
    return LineageRecord(int(d["id"]), tuple(int(p) for p in d["parent_ids"]),
                         Provenance(d["provenance"]), int(d["part_count"]), genome,
                         int(d["birth_index"]), float(d["fitness_at_birth"]))


def dumps(archive: RunArchive) -> str:
    header = {"format": FORMAT, "version": VERSION, "config": archive.config.to_dict()}
    lines = [json.dumps(header, sort_keys=True)]
    lines += [json.dumps(record_to_dict(r), sort_keys=True) for r in archive.records]
    return "\n".join(lines) + "\n"


def loads(text: str) -> RunArchive:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ArchiveError("missing header")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as e:
        raise ArchiveError(f"unreadable header: {e}") from None
    if not isinstance(header, dict) or header.get("format") != FORMAT:
        raise ArchiveError("missing header")
    if header.get("version") != VERSION:
        raise ArchiveError(f"unsupported archive version {header.get('version')!r}")
    cfg = dict(header["config"])
    archive = RunArchive(EvolutionConfig.from_dict(cfg))
    for index, line in enumerate(lines[1:]):
        try:
            archive.append(record_from_dict(json.loads(line)))
        except (ValueError, KeyError, TypeError) as e:
            raise ArchiveError(f"corrupted record {index}: {e}") from None
    return archive


def save_archive(archive: RunArchive, path) -> None:
    Path(path).write_text(dumps(archive))


def load_archive(path) -> RunArchive:
    return loads(Path(path).read_text())
