"""Exceptional-set scan: where does R_s(n) miss c_s Gamma(5/4)^4 S_s(n; W) n^{s/4}
by more than n^{s/4} / psi(n)?
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .circle import gamma_main_constant, singular_series_many
from .counting import build_table


@dataclass(frozen=True)
class PsiSpec:
    kind: str = "LOG"
    delta: float = 0.0

    def __post_init__(self):
        if self.kind not in ("LOG", "POWER"):
            raise ValueError(f"psi kind must be LOG or POWER, got {self.kind}")
        if self.kind == "POWER" and not 0 < self.delta <= 0.1:
            raise ValueError(f"POWER delta must lie in (0, 0.1], got {self.delta}")

    @classmethod
    def parse(cls, text: str) -> "PsiSpec":
        text = text.strip().lower()
        if text == "log":
            return cls("LOG")
        if text.startswith("pow:"):
            return cls("POWER", float(text[4:]))
        raise ValueError(f"cannot parse psi {text!r}; use 'log' or 'pow:<delta>'")

    def __call__(self, t):
        t = np.asarray(t, dtype=np.float64)
        if self.kind == "LOG":
            return np.log(2.0 + t)
        return (2.0 + t) ** self.delta

    def label(self) -> str:
        return "log" if self.kind == "LOG" else f"pow:{self.delta!r}"


@dataclass
class ScanReport:
    s: int
    X: int
    W: int
    psi: PsiSpec
    flagged: list[int]
    per_dyadic: list[tuple[float, float, int]]
    residue_breakdown: dict[int, int]
    min_singular_series: float
    # per-flagged-n detail, aligned with `flagged`
    counts: list[int] = field(default_factory=list, repr=False)
    mains: list[float] = field(default_factory=list, repr=False)

    @property
    def E(self) -> int:
        return len(self.flagged)

    def cumulative(self, Y: float) -> int:
        """E_s(Y; psi) for Y <= X, read off this report."""
        return sum(1 for n in self.flagged if n <= Y)


def flag_decision(s: int, n, R, main, psi: PsiSpec):
    return np.abs(R - main) > n ** (s / 4) / psi(n)


def _dyadic(X: int, flagged: np.ndarray) -> list[tuple[float, float, int]]:
    out = []
    j = 0
    while X / 2**j >= 1:
        hi, lo = X / 2**j, X / 2 ** (j + 1)
        out.append((lo, hi, int(np.count_nonzero((flagged > lo) & (flagged <= hi)))))
        j += 1
    return out


def scan(s: int, X: int, psi: PsiSpec | None = None, W: int = 200, workers: int = 1) -> ScanReport:
    if X < 1 or X > 10**7:
        raise ValueError(f"X must be in [1, 10^7], got {X}")
    if not 1 <= W <= 1000:
        raise ValueError(f"W must be in [1, 1000], got {W}")
    psi = psi or PsiSpec()
    table = build_table(s, X, workers=workers)
    n = np.arange(1, X + 1, dtype=np.int64)
    if workers > 1:
        chunks = np.array_split(n, workers)
        with ThreadPoolExecutor(workers) as pool:
            sing = np.concatenate(list(pool.map(lambda c: singular_series_many(s, c, W), chunks)))
    else:
        sing = singular_series_many(s, n, W)
    nf = n.astype(np.float64)
    main = gamma_main_constant(s) * sing * nf ** (s / 4)
    R = table.counts[1:]
    mask = flag_decision(s, nf, R, main, psi)
    flagged = n[mask]
    breakdown = {r: 0 for r in range(48)}
    for r, c in zip(*np.unique(flagged % 48, return_counts=True)):
        breakdown[int(r)] = int(c)
    return ScanReport(
        s=s,
        X=X,
        W=W,
        psi=psi,
        flagged=flagged.tolist(),
        per_dyadic=_dyadic(X, flagged),
        residue_breakdown=breakdown,
        min_singular_series=float(sing.min()),
        counts=R[mask].tolist(),
        mains=main[mask].tolist(),
    )


def top_block_densities(report: ScanReport, blocks: int = 5) -> list[float]:
    """Flagged fraction of each of the top dyadic blocks, largest block first."""
    out = []
    for lo, hi, c in report.per_dyadic[:blocks]:
        size = math.floor(hi) - math.floor(lo)
        out.append(c / size if size else 0.0)
    return out


def exponent_fit(points) -> float | None:
    """Least-squares slope of log E against log X.

    `points` is either a list of ScanReports or a list of (X, E) pairs.
    Zero counts are dropped; fewer than four usable points gives None.
    """
    pairs = [(r.X, r.E) if isinstance(r, ScanReport) else tuple(r) for r in points]
    pairs = [(x, e) for x, e in pairs if e > 0]
    if len(pairs) < 4:
        return None
    x = np.log([p[0] for p in pairs])
    y = np.log([p[1] for p in pairs])
    return float(np.polyfit(x, y, 1)[0])


def dyadic_points(report: ScanReport, count: int = 5) -> list[tuple[float, int]]:
    """(Y, E_s(Y; psi)) at Y = X, X/2, ..., read from one report."""
    return [(report.X / 2**j, report.cumulative(report.X / 2**j)) for j in range(count)]
