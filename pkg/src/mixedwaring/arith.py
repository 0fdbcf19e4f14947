"""Exact integer primitives: primality, factorization, quadratic characters,
and the two norm-form decompositions u^2 + v^2 and a^2 + ab + b^2.

Everything here works on Python ints, so products never overflow; the
2^63 ceiling is a contract, not an implementation limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

MAX_INPUT = 2**63
TRIAL_LIMIT = 10**6
RHO_ENUM_LIMIT = 10**6

# Deterministic Miller-Rabin witnesses for n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __iter__(self):
        return iter(self.factors)

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)


@dataclass(frozen=True)
class TwoSquares:
    m: int
    u: int
    v: int


@dataclass(frozen=True)
class EisensteinPair:
    p: int
    a: int
    b: int


@lru_cache(maxsize=8)
def primes_below(limit: int) -> np.ndarray:
    """All primes p < limit as an int64 array (sieve of Eratosthenes)."""
    if limit <= 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(limit, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit - 1) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve).astype(np.int64)


_SMALL_PRIMES: list[int] = []


def _trial_primes() -> list[int]:
    global _SMALL_PRIMES
    if not _SMALL_PRIMES:
        _SMALL_PRIMES = primes_below(TRIAL_LIMIT + 1).tolist()
    return _SMALL_PRIMES


def is_prime(n: int) -> bool:
    """Deterministic primality for 0 <= n < 2^64."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite n (Pollard-Brent)."""
    for c in range(1, n):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _brent(n)
    _split(d, out)
    _split(n // d, out)


def factorize(n: int) -> Factorization:
    """Trial division to 10^6, then Pollard-Brent on the cofactor."""
    if not 1 <= n < MAX_INPUT:
        raise ValueError(f"factorize needs 1 <= n < 2^63, got {n}")
    out: dict[int, int] = {}
    m = n
    for p in _trial_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out[p] = e
    if m > 1:
        if m <= TRIAL_LIMIT**2:
            out[m] = out.get(m, 0) + 1
        else:
            _split(m, out)
    return Factorization(n, tuple(sorted(out.items())))


def kronecker(D: int, m: int) -> int:
    """Kronecker symbol (D/m) for m >= 1."""
    if m < 1:
        raise ValueError("kronecker needs m >= 1")
    if m == 1:
        return 1
    result = 1
    a = D
    while m % 2 == 0:
        m //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/m), m odd
    a %= m
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    return result if m == 1 else 0


def sqrt_mod_prime(c: int, p: int) -> int:
    """A square root of c modulo the odd prime p (Tonelli-Shanks)."""
    c %= p
    if c == 0:
        return 0
    if pow(c, (p - 1) // 2, p) != 1:
        raise ValueError(f"{c} is not a square mod {p}")
    if p % 4 == 3:
        return pow(c, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, cc, t, r = s, pow(z, q, p), pow(c, q, p), pow(c, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(cc, 1 << (m - i - 1), p)
        m, cc = i, b * b % p
        t, r = t * cc % p, r * b % p
    return r


def _cornacchia(d: int, m: int, root: int) -> tuple[int, int] | None:
    """Solve x^2 + d y^2 = m given root^2 = -d mod m (Euclid descent)."""
    r0, r1 = m, root
    bound = math.isqrt(m)
    while r1 > bound:
        r0, r1 = r1, r0 % r1
    rest = m - r1 * r1
    if rest % d:
        return None
    y2 = rest // d
    y = math.isqrt(y2)
    if y * y != y2:
        return None
    return r1, y


def _prime_two_squares(p: int) -> tuple[int, int]:
    if p == 2:
        return 1, 1
    root = sqrt_mod_prime(-1, p)
    if root < p - root:
        root = p - root
    sol = _cornacchia(1, p, root)
    assert sol is not None
    return sol


def is_sum_of_two_squares(m: int) -> bool:
    if m == 0:
        return True
    if not 0 < m < MAX_INPUT:
        raise ValueError(f"need 0 < m < 2^63, got {m}")
    return all(p % 4 != 3 or e % 2 == 0 for p, e in factorize(m))


def two_square_reps(m: int) -> list[tuple[int, int]]:
    """Every (u, v) with u >= v >= 0 and u^2 + v^2 = m, largest u first.

    Built by composing Gaussian-prime factors, one choice of conjugate split
    per prime p = 1 (mod 4).
    """
    if m == 0:
        return [(0, 0)]
    fac = factorize(m)
    base = (1, 0)
    choices: list[list[tuple[int, int]]] = []
    for p, e in fac:
        if p % 4 == 3:
            if e % 2:
                return []
            base = _gmul(base, (p ** (e // 2), 0))
        elif p == 2:
            base = _gmul(base, _gpow((1, 1), e))
        else:
            pi = _prime_two_squares(p)
            pic = (pi[0], -pi[1])
            choices.append([_gmul(_gpow(pi, j), _gpow(pic, e - j)) for j in range(e + 1)])
    reps = set()
    for combo in product(*choices):
        z = base
        for w in combo:
            z = _gmul(z, w)
        u, v = abs(z[0]), abs(z[1])
        reps.add((max(u, v), min(u, v)))
    return sorted(reps, reverse=True)


def _gmul(z: tuple[int, int], w: tuple[int, int]) -> tuple[int, int]:
    return z[0] * w[0] - z[1] * w[1], z[0] * w[1] + z[1] * w[0]


def _gpow(z: tuple[int, int], e: int) -> tuple[int, int]:
    out = (1, 0)
    for _ in range(e):
        out = _gmul(out, z)
    return out


def two_square_decompose(m: int) -> TwoSquares | None:
    """Canonical representative of m = u^2 + v^2: the one with largest u."""
    if not 0 < m < MAX_INPUT:
        raise ValueError(f"need 0 < m < 2^63, got {m}")
    reps = two_square_reps(m)
    if not reps:
        return None
    u, v = reps[0]
    return TwoSquares(m, u, v)


def two_square_search(m: int) -> TwoSquares | None:
    """Exhaustive largest-u search; reference path for small m."""
    for u in range(math.isqrt(m), -1, -1):
        rest = m - u * u
        v = math.isqrt(rest)
        if v > u:
            break
        if v * v == rest:
            return TwoSquares(m, u, v)
    return None


def _eisenstein_orbit(a: int, b: int) -> set[tuple[int, int]]:
    seen = {(a, b)}
    todo = [(a, b)]
    while todo:
        x, y = todo.pop()
        for nxt in ((y, x), (-x, -y), (x + y, -y)):
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return seen


def eisenstein_decompose(p: int) -> EisensteinPair:
    """Write the prime p = 1 (mod 3) as a^2 + ab + b^2 with 1 <= a <= b.

    Solves U^2 + 3V^2 = 4p by Cornacchia with a root of -3 mod 4p, maps to
    (a, b) = ((U - V)/2, V) and then picks the positive orbit member with
    least a.
    """
    if p % 3 != 1 or not is_prime(p):
        raise ValueError(f"eisenstein_decompose needs a prime p = 1 mod 3, got {p}")
    root = sqrt_mod_prime(-3, p)
    if root % 2 == 0:
        root = p - root  # odd root is a root of -3 mod 4p as well
    sol = _cornacchia(3, 4 * p, root)
    assert sol is not None, p
    U, V = sol
    a, b = (U - V) // 2, V
    best = min((x, y) for x, y in _eisenstein_orbit(a, b) if 1 <= x <= y)
    assert best[0] ** 2 + best[0] * best[1] + best[1] ** 2 == p
    return EisensteinPair(p, *best)


def _rho_prime_power(p: int, e: int, c: int) -> int:
    """#{nu mod p^e : nu^2 = c mod p^e}."""
    q = p**e
    c %= q
    if c == 0:
        return p ** (e // 2)
    j = 0
    while c % p == 0:
        c //= p
        j += 1
    if j % 2:
        return 0
    r = e - j
    if p == 2:
        if r == 1:
            base = 1
        elif r == 2:
            base = 2 if c % 4 == 1 else 0
        else:
            base = 4 if c % 8 == 1 else 0
    else:
        base = 2 if pow(c, (p - 1) // 2, p) == 1 else 0
    return base * p ** (j // 2)


def rho(d: int, N: int) -> int:
    """Number of nu mod d with nu^2 = 2N (mod d)."""
    if d < 1:
        raise ValueError("rho needs d >= 1")
    if d == 1:
        return 1
    if d <= RHO_ENUM_LIMIT:
        nu = np.arange(d, dtype=np.int64)
        return int(np.count_nonzero(nu * nu % d == (2 * N) % d))
    out = 1
    for p, e in factorize(d):
        if p == 2 and p**e <= RHO_ENUM_LIMIT:
            out *= rho(p**e, N)
        else:
            out *= _rho_prime_power(p, e, 2 * N)
        if out == 0:
            return 0
    return out


def tau(n: int) -> int:
    out = 1
    for _, e in factorize(n):
        out *= e + 1
    return out


def euler_phi(n: int) -> int:
    out = n
    for p, _ in factorize(n):
        out -= out // p
    return out
