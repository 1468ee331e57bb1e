"""CSV reports for an analysis result, one file per table."""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path

import numpy as np

from .analysis import AnalysisResult
from .genome import MAX_PARTS


def _fmt(x) -> str:
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return repr(x)
    return str(x)


def _csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def matrix_rows(matrix: np.ndarray, row_label: str, col_label: str) -> list:
    """Rows M = 5 down to 0, columns N = 0..5, with row and column totals."""
    m = np.asarray(matrix)
    cols = list(range(MAX_PARTS + 1))
    rows = [[f"{row_label}\\{col_label}"] + cols + ["total"]]
    for i in range(MAX_PARTS, -1, -1):
        row = [i]
        for j in cols:
            row.append(int(m[i, j]) if 2 <= i + j <= MAX_PARTS else "")
        row.append(int(m[i].sum()))
        rows.append(row)
    rows.append(["total"] + [int(v) for v in m.sum(axis=0)] + [int(m.sum())])
    return rows


def species_rows(result: AnalysisResult) -> list:
    rows = [["root_id", "part_count", "members", "member_ids"]]
    for sp in result.species:
        rows.append([sp.root_id, sp.part_count, len(sp.member_ids),
                     " ".join(map(str, sp.member_ids))])
    return rows


def pair_rows(result: AnalysisResult) -> list:
    rows = [["root_id", "part_count", "most_prolific", "most_children",
             "least_prolific", "least_children"]]
    for p in result.pairs:
        rows.append([p.root_id, p.part_count, p.most_prolific,
                     result.children[p.most_prolific], p.least_prolific,
                     result.children[p.least_prolific]])
    return rows


def classification_rows(result: AnalysisResult) -> list:
    rows = [["seed_id", "part", "role", "benefit", "interaction", "growth_inside",
             "growth_alone", "d_red", "d_blue", "d_orange", "d_green"]]
    for seed_id in sorted(result.classifications):
        for k, c in enumerate(result.classifications[seed_id]):
            rows.append([seed_id, k, c.role.value, c.benefit.value, c.interaction.value,
                         f"{float(c.growth_inside):.2f}", c.growth_alone, *c.colour_deltas])
    return rows


def growth_rows(result: AnalysisResult) -> list:
    rows = [["parts", "mean_growth_least", "mean_growth_most", "count_least", "count_most"]]
    for g in result.growth:
        rows.append([g.part_count, f"{g.least_mean:.1f}", f"{g.most_mean:.1f}",
                     g.least_count, g.most_count])
    return rows


def part_growth_rows(result: AnalysisResult) -> list:
    """Together-versus-apart growth of every classified part."""
    rows = [["seed_id", "part", "red", "blue", "orange", "green", "weighted_together",
             "apart"]]
    for seed_id in sorted(result.classifications):
        for k, c in enumerate(result.classifications[seed_id]):
            rows.append([seed_id, k, *c.colour_deltas, f"{float(c.growth_inside):.2f}",
                         c.growth_alone])
    return rows


def stats_rows(result: AnalysisResult) -> list:
    rows = [["test", "most_in", "most_out", "least_in", "least_out", "odds_ratio",
             "p_value"]]
    for f in result.fisher:
        t = f.table
        rows.append([f.name, t.a, t.b, t.c, t.d, f.odds_ratio, f.p_value])
    return rows


def render(result: AnalysisResult) -> dict[str, str]:
    """File name -> CSV text."""
    mx = result.matrices
    return {
        "species.csv": _csv(species_rows(result)),
        "pairs.csv": _csv(pair_rows(result)),
        "classifications.csv": _csv(classification_rows(result)),
        "table5.csv": _csv(growth_rows(result)),
        "table6.csv": _csv(matrix_rows(mx["managers_most"], "managers", "workers")),
        "table7.csv": _csv(matrix_rows(mx["managers_least"], "managers", "workers")),
        "table8.csv": _csv(matrix_rows(mx["managers_diff"], "managers", "workers")),
        "table9.csv": _csv(part_growth_rows(result)),
        "table10.csv": _csv(matrix_rows(mx["outsiders_diff"], "outsiders", "insiders")),
        "table11.csv": _csv(matrix_rows(mx["soloists_diff"], "soloists", "ensemblists")),
        "stats.csv": _csv(stats_rows(result)),
    }


def write_reports(result: AnalysisResult, out_dir) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, text in render(result).items():
        path = out / name
        path.write_text(text)
        paths.append(path)
    return paths
