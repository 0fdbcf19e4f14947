"""Constructive representations n = x1^2 + x2^2 + y1^4 + y2^4 + y3^4.

The search rests on x^4 + y^4 + (x + y)^4 = 2(x^2 + xy + y^2)^2: pick a
prime p = 1 (mod 3), write it as a^2 + ab + b^2, and the three biquadrates
a^4, b^4, (a+b)^4 sum to 2p^2.  What is left, n - 2p^2 (suitably rescaled),
must be a sum of two squares.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

from .arith import (
    eisenstein_decompose,
    factorize,
    is_sum_of_two_squares,
    primes_below,
    two_square_decompose,
)

log = logging.getLogger(__name__)

CASE_I_RESIDUES = frozenset({3, 4, 6, 7, 11, 12, 15})
CASE_II_RESIDUES = frozenset({1, 2, 5, 9, 10, 13})
SHIFTS = (1, 16, 33, 48)


@dataclass(frozen=True)
class Decomposition16:
    n: int
    h: int
    N0: int


@dataclass(frozen=True)
class AdmissibilityStatus:
    theorem_ok: bool
    relaxed_ok: bool
    failed_conditions: tuple[str, ...]


@dataclass(frozen=True)
class CaseData:
    case_tag: str
    N: int
    multiplier: int

    @property
    def prime_bound(self) -> float:
        return math.sqrt(self.N / self.multiplier)


@dataclass(frozen=True)
class Provenance:
    case_tag: str
    p: int
    u: int
    v: int
    a: int
    b: int


@dataclass(frozen=True)
class MixedRepresentation:
    n: int
    s: int
    squares: tuple[int, int]
    biquadrates: tuple[int, ...]
    provenance: Provenance | None = field(default=None)

    @property
    def total(self) -> int:
        return sum(x * x for x in self.squares) + sum(y**4 for y in self.biquadrates)

    @property
    def positive(self) -> bool:
        return all(x > 0 for x in self.squares + self.biquadrates)


def biquadrate_identity(x: int, y: int) -> tuple[int, int]:
    lhs = x**4 + y**4 + (x + y) ** 4
    rhs = 2 * (x * x + x * y + y * y) ** 2
    return lhs, rhs


def decompose_16(n: int) -> Decomposition16:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    h, m = 0, n
    while m % 16 == 0:
        m //= 16
        h += 1
    return Decomposition16(n, h, m)


def admissibility(n: int) -> AdmissibilityStatus:
    """Evaluate the theorem's congruence classes and the relaxed N0 ones.

    The two predicates are independent; both are always reported.
    """
    N0 = decompose_16(n).N0
    failed = []
    if n % 8 == 0:
        failed.append("DIV8")
    if n % 3 == 2:
        failed.append("MOD3")
    if n % 16 == 14:
        failed.append("MOD16_14")
    theorem_ok = not failed
    relaxed = []
    if N0 % 16 == 14:
        relaxed.append("N0_MOD16_14")
    if N0 % 32 == 24:
        relaxed.append("N0_MOD32_24")
    if N0 % 3 == 2:
        relaxed.append("N0_MOD3_2")
    return AdmissibilityStatus(theorem_ok, not relaxed, tuple(failed + relaxed))


def select_case(N0: int) -> CaseData | None:
    if N0 < 1 or N0 % 16 == 0:
        raise ValueError(f"select_case needs 16 ∤ N0, got {N0}")
    r = N0 % 16
    if r in CASE_I_RESIDUES:
        return CaseData("I", N0, 2)
    if r in CASE_II_RESIDUES:
        return CaseData("II", N0, 32)
    if r == 8 and N0 % 32 == 8:
        N1 = (N0 - 8) // 32
        return CaseData("III", 8 * N1 + 2, 8)
    # remaining residues 0, 14 and 24 mod 32: no case applies
    return None


def enumerate_A(c: CaseData) -> list[tuple[int, int]]:
    """Pairs (p, N - m p^2) over primes p = 1 (mod 3) with m p^2 < N."""
    bound = math.isqrt(c.N // c.multiplier) + 2
    out = []
    for p in primes_below(bound).tolist():
        if p % 3 != 1:
            continue
        element = c.N - c.multiplier * p * p
        if element <= 0:
            break
        out.append((p, element))
    return out


def _assemble(n: int, h: int, c: CaseData, p: int, element: int) -> MixedRepresentation:
    ts = two_square_decompose(element)
    ep = eisenstein_decompose(p)
    a, b = ep.a, ep.b
    if c.case_tag == "I":
        sq_scale, bq_scale = 2 ** (2 * h), 2**h
    elif c.case_tag == "II":
        sq_scale, bq_scale = 2 ** (2 * h), 2 ** (h + 1)
    else:
        sq_scale, bq_scale = 2 ** (2 * h + 1), 2 ** (h + 1)
    rep = MixedRepresentation(
        n=n,
        s=3,
        squares=(sq_scale * ts.u, sq_scale * ts.v),
        biquadrates=(bq_scale * a, bq_scale * b, bq_scale * (a + b)),
        provenance=Provenance(c.case_tag, p, ts.u, ts.v, a, b),
    )
    if rep.total != n:
        raise ArithmeticError(f"reassembly failed for n={n}, p={p}: {rep}")
    return rep


def find_all_representations(n: int) -> list[MixedRepresentation]:
    """One representation per qualifying prime p, ascending in p."""
    d = decompose_16(n)
    c = select_case(d.N0)
    if c is None:
        return []
    return [
        _assemble(n, d.h, c, p, element)
        for p, element in enumerate_A(c)
        if is_sum_of_two_squares(element)
    ]


def find_representation(n: int) -> MixedRepresentation | None:
    """The representation coming from the smallest qualifying p, or None.

    Runs whether or not n is admissible; admissibility is a separate report.
    """
    d = decompose_16(n)
    c = select_case(d.N0)
    if c is None:
        return None
    for p, element in enumerate_A(c):
        if is_sum_of_two_squares(element):
            return _assemble(n, d.h, c, p, element)
    return None


def describe_failure(n: int) -> dict:
    """Factorizations of every element of the search set, for failure logs."""
    d = decompose_16(n)
    c = select_case(d.N0)
    if c is None:
        return {"n": n, "case": None, "elements": []}
    return {
        "n": n,
        "case": c.case_tag,
        "N": c.N,
        "elements": [
            {"p": p, "element": e, "factors": [list(f) for f in factorize(e).factors]}
            for p, e in enumerate_A(c)
        ],
    }


def corollary_shift(M: int, k: int) -> tuple[int, int] | None:
    """Smallest t in {1, 16, 33, 48} with M - t^k in the theorem's classes.

    Shifts with t^k >= M are skipped rather than rejected.
    """
    if k < 1 or M < 2:
        raise ValueError(f"corollary_shift needs M >= 2 and k >= 1, got M={M}, k={k}")
    for t in SHIFTS:
        n = M - t**k
        if n >= 1 and admissibility(n).theorem_ok:
            return t, n
    log.warning("no admissible shift for M=%d, k=%d", M, k)
    return None
