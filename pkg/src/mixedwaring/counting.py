"""Exact counts R_s(n) of ordered positive solutions of
x1^2 + x2^2 + y1^4 + ... + ys^4 = n.

Two independent routes: a per-n oracle (biquadrate multisets times a
divisor-formula two-square count) and a table builder (lattice-pair
histogram followed by s shifted-add passes).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations_with_replacement
from collections import Counter

import numpy as np

from .arith import factorize

MAX_TABLE = 10**7


@dataclass(frozen=True)
class RepCountTable:
    s: int
    X: int
    counts: np.ndarray

    def __getitem__(self, n: int) -> int:
        return int(self.counts[n])


def r2_positive(m: int) -> int:
    """#{(x1, x2) : x1, x2 >= 1, x1^2 + x2^2 = m}.

    Uses r_2(m) = 4 sum_{d | m} chi_{-4}(d) and removes the four axis points
    when m is a perfect square.
    """
    if m < 2:
        return 0
    total = 1
    for p, e in factorize(m):
        if p % 4 == 3:
            if e % 2:
                return 0
        elif p % 4 == 1:
            total *= e + 1
    r = math.isqrt(m)
    return total - (1 if r * r == m else 0)


def _orderings(combo: tuple[int, ...]) -> int:
    out = math.factorial(len(combo))
    for c in Counter(combo).values():
        out //= math.factorial(c)
    return out


def rep_count_oracle(s: int, n: int) -> int:
    """R_s(n) by nested loops over nondecreasing biquadrate tuples."""
    if s not in (3, 4):
        raise ValueError(f"s must be 3 or 4, got {s}")
    if n > 10**8:
        raise ValueError("oracle limited to n <= 10^8")
    ymax = 1
    while (ymax + 1) ** 4 <= n:
        ymax += 1
    total = 0
    for combo in combinations_with_replacement(range(1, ymax + 1), s):
        rest = n - sum(y**4 for y in combo)
        if rest < 2:
            continue
        r = r2_positive(rest)
        if r:
            total += r * _orderings(combo)
    return total


def _r2_table(X: int) -> np.ndarray:
    counts = np.zeros(X + 1, dtype=np.int64)
    for x1 in range(1, math.isqrt(max(X - 1, 0)) + 1):
        top = math.isqrt(X - x1 * x1)
        if top < 1:
            break
        x2 = np.arange(1, top + 1, dtype=np.int64)
        counts[x1 * x1 + x2 * x2] += 1
    return counts


def _shift_add(src: np.ndarray, shifts: list[int], lo: int, hi: int) -> np.ndarray:
    out = np.zeros(hi - lo, dtype=np.int64)
    for d in shifts:
        a = max(lo, d)
        if a >= hi:
            continue
        out[a - lo :] += src[a - d : hi - d]
    return out


def build_table(s: int, X: int, workers: int = 1) -> RepCountTable:
    """R_s(n) for all 0 <= n <= X.

    Each biquadrate pass is a sum of shifted copies; with workers > 1 the
    output index range is split into disjoint slices, so the result is the
    same array for any worker count.
    """
    if s not in (3, 4):
        raise ValueError(f"s must be 3 or 4, got {s}")
    if not 1 <= X <= MAX_TABLE:
        raise ValueError(f"X must be in [1, {MAX_TABLE}], got {X}")
    cur = _r2_table(X)
    shifts = [y**4 for y in range(1, X + 1) if y**4 <= X]
    size = X + 1
    bounds = np.linspace(0, size, max(1, workers) + 1).astype(int)
    slices = [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
    for _ in range(s):
        if workers > 1:
            with ThreadPoolExecutor(workers) as pool:
                parts = list(pool.map(lambda ab: _shift_add(cur, shifts, *ab), slices))
        else:
            parts = [_shift_add(cur, shifts, 0, size)]
        cur = np.concatenate(parts)
    return RepCountTable(s, X, cur)


def summatory_count(s: int, X: int) -> int:
    """#{positive tuples with x1^2 + x2^2 + sum y^4 <= X} by direct enumeration."""
    total = 0
    ys = [y**4 for y in range(1, X + 1) if y**4 <= X]

    def rec(depth: int, budget: int) -> None:
        nonlocal total
        if depth == s:
            for x1 in range(1, math.isqrt(max(budget - 1, 0)) + 1):
                total += math.isqrt(budget - x1 * x1)
            return
        for y4 in ys:
            if y4 >= budget:
                break
            rec(depth + 1, budget - y4)

    rec(0, X)
    return total
