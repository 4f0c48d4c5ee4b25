"""Rank statistics: Spearman correlation with fractional tie ranks.

Fractional (average) ranks are mandatory here because readability labels
are binary and therefore maximally tied. The rank-Pearson step uses
population moments.
"""

from __future__ import annotations

import math
from typing import Sequence

__all__ = ["average_ranks", "spearman"]


def average_ranks(values: Sequence[float]) -> list[float]:
    """1-based ranks, ties sharing the average of their rank positions."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        avg = (i + j + 2) / 2.0  # mean of 1-based positions i+1 .. j+1
        for k in range(i, j + 1):
            ranks[order[k]] = avg
        i = j + 1
    return ranks


def spearman(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Spearman rho: Pearson correlation of average-ranked values.

    Raises ValueError on mismatched lengths, fewer than two pairs,
    non-finite values, or a constant side (undefined correlation).
    """
    if len(xs) != len(ys):
        raise ValueError("input lengths differ")
    n = len(xs)
    if n < 2:
        raise ValueError("need at least two pairs")
    if not all(math.isfinite(v) for v in xs) or not all(math.isfinite(v) for v in ys):
        raise ValueError("inputs must be finite")
    if min(xs) == max(xs) or min(ys) == max(ys):
        raise ValueError("undefined correlation")

    rx = average_ranks(xs)
    ry = average_ranks(ys)
    mx = sum(rx) / n
    my = sum(ry) / n
    cov = sum((a - mx) * (b - my) for a, b in zip(rx, ry))
    var_x = sum((a - mx) ** 2 for a in rx)
    var_y = sum((b - my) ** 2 for b in ry)
    return cov / math.sqrt(var_x * var_y)
