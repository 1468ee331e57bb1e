"""Two-tailed Fisher exact test on 2x2 tables."""

from __future__ import annotations

import math
from dataclasses import dataclass

REL_TOL = 1e-9


@dataclass(frozen=True)
class ContingencyTable:
    """[[a, b], [c, d]]; rows are groups, columns are outcome / not outcome."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in "abcd":
            v = getattr(self, name)
            if int(v) != v or v < 0:
                raise ValueError(f"table entries must be non-negative integers, {name}={v}")

    @property
    def total(self) -> int:
        return self.a + self.b + self.c + self.d

    def odds_ratio(self) -> float:
        num = self.a * self.d
        den = self.b * self.c
        if den == 0:
            return math.inf if num else math.nan
        return num / den


def _log_choose(n: int, k: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def fisher_exact(table: ContingencyTable) -> float:
    """Two-tailed p-value.

    Sums the hypergeometric probabilities of every table with the observed
    margins that is no more likely than the observed one.
    """
    if table.total == 0:
        raise ValueError("Fisher test needs at least one observation")
    row1 = table.a + table.b
    col1 = table.a + table.c
    n = table.total
    lo = max(0, row1 + col1 - n)
    hi = min(row1, col1)

    def logp(x):
        # the common denominator C(n, row1) cancels in the normalisation below
        return _log_choose(col1, x) + _log_choose(n - col1, row1 - x)

    logs = [logp(x) for x in range(lo, hi + 1)]
    peak = max(logs)
    cutoff = logp(table.a) + math.log1p(REL_TOL)
    weights = [math.exp(lp - peak) for lp in logs]
    tail = math.fsum(w for w, lp in zip(weights, logs) if lp <= cutoff)
    return min(1.0, tail / math.fsum(weights))
