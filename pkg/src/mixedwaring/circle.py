"""Major-arc ingredients for two squares plus s biquadrates.

Complete exponential sums S_k(q, a), the local factors A_s(q; n), the
truncated singular series, local densities, the Gamma-function main-term
constant, the exponential sums f_k and their major-arc approximants, and
the singular integral J_s(n; W).

All complete sums are built from exact residues a r^k mod q; floating
point enters only through the lookup e(j/q), so nothing drifts with q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .arith import factorize

TWO_PI = 2.0 * math.pi
DIRECT_LIMIT = 1000
GL_ORDER = 16
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(GL_ORDER)

C3 = 2.0 * math.sqrt(2.0) / 3.0
C4 = math.pi / 4.0


@dataclass(frozen=True)
class GaussSumValue:
    k: int
    q: int
    a: int
    value: complex


@dataclass(frozen=True)
class SingularSeriesPartial:
    s: int
    n: int
    W: int
    value: float
    last_block: float


@dataclass(frozen=True)
class MajorArcParams:
    X: float
    nu: float

    @property
    def W(self) -> float:
        return self.X**self.nu

    @property
    def P2(self) -> int:
        return math.isqrt(int(self.X))

    @property
    def P4(self) -> int:
        return _iroot(int(self.X), 4)


def _iroot(x: int, k: int) -> int:
    r = int(round(x ** (1.0 / k)))
    while r**k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def _check_s(s: int) -> None:
    if s not in (3, 4):
        raise ValueError(f"s must be 3 or 4, got {s}")


@lru_cache(maxsize=4096)
def _unit_roots(q: int) -> np.ndarray:
    j = np.arange(q, dtype=np.float64)
    return np.exp(2j * np.pi * j / q)


def _power_residues(k: int, q: int) -> np.ndarray:
    r = np.arange(q, dtype=np.int64)
    out = np.ones(q, dtype=np.int64) % q
    for _ in range(k):
        out = out * r % q
    return out


@lru_cache(maxsize=4096)
def residue_counts(k: int, q: int) -> np.ndarray:
    """counts[j] = #{r mod q : r^k = j mod q}."""
    return np.bincount(_power_residues(k, q), minlength=q)


def gauss_sum(k: int, q: int, a: int) -> complex:
    """S_k(q, a) = sum_{r=1}^{q} e(a r^k / q)."""
    if q < 1 or math.gcd(a, q) != 1:
        raise ValueError(f"gauss_sum needs gcd(a, q) = 1, got a={a}, q={q}")
    if q == 1:
        return 1.0 + 0.0j
    idx = (a % q) * _power_residues(k, q) % q
    return complex(_unit_roots(q)[idx].sum())


@lru_cache(maxsize=4096)
def gauss_sums_all(k: int, q: int) -> np.ndarray:
    """S_k(q, a) for every a mod q at once (zero-padded FFT of residue counts)."""
    return q * np.fft.ifft(residue_counts(k, q).astype(np.float64))


def w_k(k: int, q: int) -> float:
    """The multiplicative majorant w_k(q) for q^{-1} S_k(q, a)."""
    out = 1.0
    for p, e in factorize(q):
        u = (e - 1) // k
        v = e - u * k
        out *= k * p ** (-u - 0.5) if v == 1 else p ** (-u - 1.0)
    return out


def _local_factor_direct(s: int, q: int, n: int) -> complex:
    total = 0.0 + 0.0j
    for a in range(1, q + 1):
        if math.gcd(a, q) != 1:
            continue
        t2 = gauss_sum(2, q, a) / q
        t4 = gauss_sum(4, q, a) / q
        total += t2 * t2 * t4**s * np.exp(-2j * np.pi * ((n * a) % q) / q)
    return total


@lru_cache(maxsize=8192)
def residue_table(s: int, q: int) -> np.ndarray:
    """A_s(q; r) for every residue r mod q (real parts).

    A_s(q; .) is the discrete Fourier transform of the coefficient vector
    (q^{-1} S_2(q,a))^2 (q^{-1} S_4(q,a))^s restricted to (a, q) = 1.
    """
    _check_s(s)
    if q == 1:
        return np.ones(1)
    a = np.arange(q)
    coef = (gauss_sums_all(2, q) / q) ** 2 * (gauss_sums_all(4, q) / q) ** s
    coef[np.gcd(a, q) != 1] = 0.0
    table = np.fft.fft(coef)
    assert np.abs(table.imag).max() <= 1e-9, (s, q)
    return table.real.copy()


def _local_factor_multiplicative(s: int, q: int, n: int) -> float:
    out = 1.0
    for p, e in factorize(q):
        pe = p**e
        out *= float(residue_table(s, pe)[n % pe])
    return out


def local_factor(s: int, q: int, n: int, method: str = "auto") -> float:
    """A_s(q; n).

    method: "direct" loops over a (exact-residue Gauss sums), "table" reads
    the FFT residue table, "multiplicative" multiplies prime-power factors.
    "auto" uses the table up to q = 1000 and multiplicativity beyond.
    """
    _check_s(s)
    if q < 1:
        raise ValueError("q must be positive")
    if method == "auto":
        method = "table" if q <= DIRECT_LIMIT else "multiplicative"
    if method == "direct":
        return _local_factor_direct(s, q, n).real
    if method == "table":
        return float(residue_table(s, q)[n % q])
    if method == "multiplicative":
        return _local_factor_multiplicative(s, q, n)
    raise ValueError(f"unknown method {method!r}")


def singular_series(s: int, n: int, W: int) -> SingularSeriesPartial:
    """Truncated singular series sum_{q <= W} A_s(q; n)."""
    _check_s(s)
    if W < 1:
        raise ValueError("W must be positive")
    vals = np.array([local_factor(s, q, n) for q in range(1, W + 1)])
    last = float(vals[W // 2 :].sum()) if W > 1 else 0.0
    return SingularSeriesPartial(s, n, W, float(vals.sum()), last)


def singular_series_many(s: int, ns: np.ndarray, W: int) -> np.ndarray:
    """Vectorized truncated singular series for an array of n.

    A_s(q; n) depends on n only through n mod q, so each q costs a single
    table lookup per n.  Summation order over q is fixed, hence results are
    bit-identical however the n array is partitioned.
    """
    _check_s(s)
    ns = np.asarray(ns, dtype=np.int64)
    out = np.zeros(ns.shape, dtype=np.float64)
    for q in range(1, W + 1):
        out += residue_table(s, q)[ns % q]
    return out


def tail_block(s: int, n: int, W: int) -> float:
    """sum_{W < q <= 2W} |A_s(q; n)|."""
    return float(sum(abs(local_factor(s, q, n)) for q in range(W + 1, 2 * W + 1)))


def tail_slope(s: int, n: int, Ws=(16, 32, 64, 128, 256)) -> float:
    """Least-squares slope of log tail_block against log W."""
    t = np.array([tail_block(s, n, W) for W in Ws])
    return float(np.polyfit(np.log(Ws), np.log(t), 1)[0])


def _cyclic_convolve(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    out = np.zeros_like(x)
    for j in np.flatnonzero(y):
        out += y[j] * np.roll(x, j)
    return out


def local_density(s: int, n: int, p: int, H: int) -> float:
    """M_n(p^H) / p^{H(s+1)} via value-distribution convolution.

    Works with normalized distributions (counts / q), so the result is a
    product of probabilities times q and never overflows.
    """
    _check_s(s)
    if H == 0:
        return 1.0
    q = p**H
    d2 = residue_counts(2, q) / q
    d4 = residue_counts(4, q) / q
    dist = _cyclic_convolve(d2, d2)
    for _ in range(s):
        dist = _cyclic_convolve(dist, d4)
    return float(dist[n % q] * q)


def gamma_main_constant(s: int) -> float:
    """c_s Gamma(5/4)^4, checked against Gamma(3/2)^2 Gamma(5/4)^s / Gamma(s/4 + 1)."""
    _check_s(s)
    c = C3 if s == 3 else C4
    value = c * math.gamma(1.25) ** 4
    closed = math.gamma(1.5) ** 2 * math.gamma(1.25) ** s / math.gamma(s / 4 + 1)
    assert abs(value - closed) <= 1e-12, (s, value, closed)
    return value


def singular_integral_closed_form(s: int, n: float) -> float:
    _check_s(s)
    return math.gamma(1.5) ** 2 * math.gamma(1.25) ** s / math.gamma(s / 4 + 1) * n ** (s / 4)


def main_term(s: int, n: int, W: int) -> float:
    return gamma_main_constant(s) * singular_series(s, n, W).value * n ** (s / 4)


def f_k(k: int, alpha, P: int) -> complex:
    """sum_{1 <= x <= P} e(alpha x^k) with phases reduced mod 1 exactly."""
    num, den = Fraction(alpha).as_integer_ratio()
    if den < 2**31 and P < 2**15:
        x = np.arange(1, P + 1, dtype=np.int64)
        xk = np.ones_like(x)
        for _ in range(k):
            xk = xk * x % den
        phases = (num % den) * xk % den / den
    else:
        phases = np.array([num * x**k % den for x in range(1, P + 1)], dtype=np.float64) / den
    return complex(np.exp(2j * np.pi * phases).sum())


def _panels(total_phase: float, lo: float, hi: float, k: int = 1, min_panels: int = 2):
    """Breakpoints on [lo, hi] with phase change <= pi/4 per panel.

    For k > 1 the phase grows like t^k on [0, hi]; breakpoints sit at
    hi * (j / m)^{1/k}, which spreads the phase evenly.
    """
    m = max(min_panels, int(math.ceil(abs(total_phase) / (math.pi / 4))))
    j = np.arange(m + 1) / m
    if k > 1:
        return lo + (hi - lo) * j ** (1.0 / k)
    return lo + (hi - lo) * j


def _gl_nodes(breaks: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a, b = breaks[:-1, None], breaks[1:, None]
    half = (b - a) / 2
    nodes = (a + b) / 2 + half * _GL_NODES[None, :]
    weights = half * _GL_WEIGHTS[None, :]
    return nodes.ravel(), weights.ravel()


def v_k(k: int, beta, P: float) -> np.ndarray | complex:
    """v_k(beta) = int_0^P e(beta gamma^k) d gamma by phase-bounded panels."""
    b = np.atleast_1d(np.asarray(beta, dtype=np.float64))
    bmax = float(np.abs(b).max()) if b.size else 0.0
    breaks = _panels(TWO_PI * bmax * P**k, 0.0, float(P), k=k)
    g, w = _gl_nodes(breaks)
    gk = g**k
    vals = np.exp(2j * np.pi * np.outer(b, gk)) @ w
    return vals if np.ndim(beta) else complex(vals[0])


def f_k_star(k: int, alpha, q: int, a: int, P: int) -> complex:
    """q^{-1} S_k(q, a) v_k(alpha - a/q)."""
    beta = float(Fraction(alpha) - Fraction(a, q))
    return gauss_sum(k, q, a) / q * v_k(k, beta, P)


def singular_integral(s: int, n: int, W: float, X: float, with_imag: bool = False):
    """J_s(n; W) = int_{|beta| <= W/X} v_2(beta)^2 v_4(beta)^s e(-n beta) d beta."""
    _check_s(s)
    params = MajorArcParams(X, 0.1)
    P2, P4 = params.P2, params.P4
    L = W / X
    if L <= 0:
        return (0.0, 0.0) if with_imag else 0.0
    # integrand phase bound: n + 2 P2^2 + s P4^4 per unit beta
    rate = TWO_PI * (n + 2 * P2**2 + s * P4**4)
    breaks = _panels(rate * 2 * L, -L, L, min_panels=4)
    beta, w = _gl_nodes(breaks)
    integrand = v_k(2, beta, P2) ** 2 * v_k(4, beta, P4) ** s * np.exp(-2j * np.pi * n * beta)
    J = complex(np.dot(integrand, w))
    return (J.real, J.imag) if with_imag else J.real
