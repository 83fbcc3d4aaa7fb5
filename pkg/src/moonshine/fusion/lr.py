"""Littlewood-Richardson coefficients by counting LR skew tableaux."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

from .partitions import Partition, contains, normalize


def lr_coeff(alpha: Sequence[int], beta: Sequence[int], gamma: Sequence[int]) -> int:
    """Multiplicity of L(gamma) in L(alpha) (x) L(beta) for GL_n.

    Counts semistandard fillings of gamma/alpha with content beta whose
    reverse reading word (rows right to left, top to bottom) is a lattice word.
    """
    return _lr(normalize(alpha), normalize(beta), normalize(gamma))


@lru_cache(maxsize=200_000)
def _lr(alpha: Partition, beta: Partition, gamma: Partition) -> int:
    if sum(alpha) + sum(beta) != sum(gamma) or not contains(gamma, alpha):
        return 0
    if not beta:
        return 1
    rows = len(gamma)
    a = list(alpha) + [0] * (rows - len(alpha))
    # filled[r][c] for c in the skew row r
    filled: list[dict[int, int]] = [dict() for _ in range(rows)]
    cells = [(r, c) for r in range(rows) for c in range(gamma[r] - 1, a[r] - 1, -1)]
    counts = [0] * (len(beta) + 1)
    m = len(beta)

    def search(idx: int) -> int:
        if idx == len(cells):
            return 1
        r, c = cells[idx]
        # row weakly increasing: going right to left, bounded by the entry to the right
        hi = filled[r].get(c + 1, m)
        hi = min(hi, m, r + 1)
        # column strict: greater than the entry above, if that cell is in the skew shape
        lo = filled[r - 1][c] + 1 if r > 0 and c in filled[r - 1] else 1
        total = 0
        for v in range(lo, hi + 1):
            if counts[v] >= beta[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            counts[v] += 1
            filled[r][c] = v
            total += search(idx + 1)
            del filled[r][c]
            counts[v] -= 1
        return total

    return search(0)


def partitions_between(inner: Partition, size: int, max_rows: int, max_extra: int) -> Iterator[Partition]:
    """Partitions of ``size`` containing ``inner``, with at most ``max_rows`` rows,
    each row exceeding ``inner`` by at most ``max_extra``."""
    inner_p = list(inner) + [0] * max(0, max_rows - len(inner))
    if len(inner) > max_rows:
        return

    def rec(i: int, remaining: int, cap: int, acc: list[int]) -> Iterator[Partition]:
        if i == max_rows:
            if remaining == 0:
                yield normalize(acc)
            return
        lo = inner_p[i]
        hi = min(cap, inner_p[i] + max_extra, lo + remaining)
        for v in range(hi, lo - 1, -1):
            yield from rec(i + 1, remaining - (v - lo), v, acc + [v])

    yield from rec(0, size - sum(inner), 10**9, [])


def lr_product(alpha: Sequence[int], beta: Sequence[int], max_rows: int) -> dict[Partition, int]:
    """s_alpha * s_beta restricted to partitions with at most ``max_rows`` rows."""
    alpha, beta = normalize(alpha), normalize(beta)
    if len(alpha) > max_rows or len(beta) > max_rows:
        return {}
    first = beta[0] if beta else 0
    out = {}
    for gamma in partitions_between(alpha, sum(alpha) + sum(beta), max_rows, first):
        c = _lr(alpha, beta, gamma)
        if c:
            out[gamma] = c
    return out
