"""Exact desk-scale versions of the sieve quantities attached to the search set.

S(A, P, z) and T(A, P, z) are computed by factorizing every element
directly, which at this scale is cheaper and sharper than any weighted
sieve.  P is the set of primes = 3 (mod 4) not dividing 3N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.integrate import quad

from .arith import Factorization, euler_phi, factorize, kronecker, primes_below, rho
from .builder import decompose_16, enumerate_A, select_case


@dataclass(frozen=True)
class SieveElement:
    p: int
    element: int
    factorization: Factorization
    survives: bool


@dataclass
class SieveReport:
    N0: int
    case_tag: str
    N: int
    z: float
    S_count: int
    T_count: int
    elements: list[SieveElement] = field(default_factory=list)


@dataclass(frozen=True)
class LValueEstimate:
    D: int
    M: int
    value: float
    tail_bound: float
    fundamental: bool


@dataclass(frozen=True)
class SieveConstant:
    N: int
    value: float
    l_minus: LValueEstimate
    l_plus: LValueEstimate
    product_factor: float


@dataclass
class EHRemainder:
    N0: int
    D: int
    z: float
    x: float
    value: float
    terms: list[tuple[int, int, float]]

    def eh_scale(self, A: float) -> float:
        """x (log x)^{-A}, the size the Elliott-Halberstam bound predicts."""
        return self.x / math.log(self.x) ** A


def _case(N0: int):
    c = select_case(N0)
    if c is None:
        raise ValueError(f"no case applies to N0={N0}")
    return c


def in_sieving_set(w: int, N: int) -> bool:
    return w % 4 == 3 and (3 * N) % w != 0


def sieve_counts(N0: int, z: float) -> SieveReport:
    c = _case(N0)
    N = c.N
    if N > 10**10:
        raise ValueError("N above factorization budget 10^10")
    root = math.sqrt(N)
    if z > root * (1 + 1e-12):
        raise ValueError(f"z={z} exceeds sqrt(N)={root}")
    elements = []
    S = T = 0
    for p, m in enumerate_A(c):
        fac = factorize(m)
        sifting = [w for w, _ in fac if in_sieving_set(w, N)]
        survives = all(w >= z for w in sifting)
        elements.append(SieveElement(p, m, fac, survives))
        if survives:
            S += 1
            big = sum(e for w, e in fac if in_sieving_set(w, N) and z < w <= root)
            if big >= 2:
                T += 1
    return SieveReport(N0, c.case_tag, N, z, S, T, elements)


def sieve_report_json(r: SieveReport) -> dict:
    return {
        "n0": r.N0,
        "case": r.case_tag,
        "n": r.N,
        "z": r.z,
        "s": r.S_count,
        "t": r.T_count,
        "elements": [
            {
                "p": e.p,
                "element": e.element,
                "factors": [list(f) for f in e.factorization.factors],
                "survives": e.survives,
            }
            for e in r.elements
        ],
    }


def li(x: float) -> float:
    """Logarithmic integral from 2."""
    return quad(lambda t: 1.0 / math.log(t), 2.0, x, limit=200)[0]


def eligible_moduli(N: int, z: float, D: float) -> list[int]:
    """Squarefree products d < D of primes from the sieving set below z."""
    ps = [w for w in primes_below(max(2, math.ceil(z))).tolist() if w < z and in_sieving_set(w, N)]
    out = [1]
    for r in range(1, len(ps) + 1):
        grew = False
        for combo in combinations(ps, r):
            d = math.prod(combo)
            if d < D:
                out.append(d)
                grew = True
        if not grew:
            break
    return sorted(out)


def eh_remainder(N0: int, D: int, z: float) -> EHRemainder:
    """sum_{d < D, d | P(z)} rho(d) max_{(a,3d)=1} |pi(x; 3d, a) - li(x)/phi(3d)|."""
    c = _case(N0)
    if c.N > 10**8:
        raise ValueError("N above prime-counting budget 10^8")
    x = math.sqrt(c.N / c.multiplier)
    ps = primes_below(math.floor(x) + 1)
    lix = li(x)
    terms = []
    total = 0.0
    for d in eligible_moduli(c.N, z, D):
        q = 3 * d
        counts = np.bincount(ps % q, minlength=q)
        units = [a for a in range(q) if math.gcd(a, q) == 1]
        expected = lix / euler_phi(q)
        dev = max(abs(int(counts[a]) - expected) for a in units)
        r = rho(d, c.N)
        terms.append((d, r, dev))
        total += r * dev
    return EHRemainder(N0, D, z, x, total, terms)


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def is_fundamental(D: int) -> bool:
    def squarefree(m: int) -> bool:
        return all(e == 1 for _, e in factorize(abs(m)))

    if D in (0, 1):
        return False
    if D % 4 == 1:
        return squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and squarefree(m)
    return False


def l_value(D: int, M: int) -> LValueEstimate:
    """sum_{m <= M} (D/m)/m with a partial-summation tail bound.

    (D/.) is periodic with period |D| (D = 0, 1 mod 4) or 4|D| otherwise, so
    a window sum never exceeds twice the largest partial sum over one period.
    """
    if _is_square(D):
        raise ValueError(f"(D/.) is principal for square D={D}")
    period = abs(D) if D % 4 in (0, 1) else 4 * abs(D)
    span = min(period, M)
    chi = np.array([kronecker(D, m) for m in range(1, span + 1)], dtype=np.float64)
    if span < M:
        chi = np.resize(chi, M)  # repeats the period
    m = np.arange(1, M + 1, dtype=np.float64)
    value = float(np.sum(chi / m))
    if period <= M:
        H = float(np.abs(np.cumsum(chi[:period])).max())
    else:
        H = math.sqrt(period) * math.log(period)
    return LValueEstimate(D, M, value, 2.0 * H / (M + 1), is_fundamental(D))


def sieve_constant(N0: int, M: int = 10**5) -> SieveConstant:
    """(L(1, chi_{-2N}) / L(1, chi_{2N}))^{1/2} prod_{w | N, w = 3 mod 4} (1 + 1/w)."""
    c = _case(N0)
    N = c.N
    if _is_square(2 * N):
        raise ValueError(f"2N={2 * N} is a perfect square")
    lm = l_value(-2 * N, M)
    lp = l_value(2 * N, M)
    if abs(lp.value) < lp.tail_bound:
        raise ValueError(f"L(1, chi_{2 * N}) estimate {lp.value} below its tail bound {lp.tail_bound}")
    prod = 1.0
    for w, _ in factorize(N):
        if w % 4 == 3:
            prod *= 1 + 1 / w
    return SieveConstant(N, math.sqrt(lm.value / lp.value) * prod, lm, lp, prod)


def sieve_scale(N0: int, M: int = 10**5) -> float:
    """S(N) sqrt(N) / (log N)^{3/2}, the shape of the lower bound for S."""
    sc = sieve_constant(N0, M)
    return sc.value * math.sqrt(sc.N) / math.log(sc.N) ** 1.5


__all__ = [
    "EHRemainder",
    "LValueEstimate",
    "SieveConstant",
    "SieveElement",
    "SieveReport",
    "decompose_16",
    "eh_remainder",
    "eligible_moduli",
    "l_value",
    "li",
    "sieve_constant",
    "sieve_counts",
    "sieve_report_json",
    "sieve_scale",
]
