import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from mixedwaring.arith import (
    eisenstein_decompose,
    factorize,
    is_prime,
    is_sum_of_two_squares,
    kronecker,
    primes_below,
    _rho_prime_power,
    rho,
    tau,
    two_square_decompose,
    two_square_search,
)


def trial_division(n):
    out, p = [], 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def brute_rho(d, N):
    return sum(1 for v in range(d) if (v * v - 2 * N) % d == 0)


def legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


@pytest.mark.parametrize("n,expected", [(0, False), (1, False), (2, True), (953, True), (1666, False)])
def test_is_prime_examples(n, expected):
    assert is_prime(n) is expected


def test_is_prime_matches_sieve():
    sieve = set(primes_below(20000).tolist())
    assert all(is_prime(n) == (n in sieve) for n in range(20000))


@pytest.mark.parametrize(
    "n",
    [
        2**61 - 1,
        3215031751,  # strong pseudoprime to bases 2, 3, 5, 7
        3825123056546413051,  # strong pseudoprime to the first nine prime bases
        18446744073709551557,  # largest prime below 2^64
    ],
)
def test_is_prime_hard_cases(n):
    assert is_prime(n) == (n in (2**61 - 1, 18446744073709551557))


@pytest.mark.parametrize(
    "n,factors",
    [(1, ()), (1666, ((2, 1), (7, 2), (17, 1))), (1906, ((2, 1), (953, 1)))],
)
def test_factorize_examples(n, factors):
    assert factorize(n).factors == factors


@given(st.integers(min_value=1, max_value=10**7))
def test_factorize_matches_trial_division(n):
    assert list(factorize(n).factors) == trial_division(n)


def test_factorize_large_semiprime():
    n = 2147483647 * 2147483659
    fac = factorize(n)
    assert math.prod(pr**e for pr, e in fac) == n
    assert all(is_prime(pr) for pr in fac.primes())
    assert fac.factors == ((2147483647, 1), (2147483659, 1))


def test_factorize_rejects_out_of_range():
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(ValueError):
        factorize(2**63)


@pytest.mark.parametrize("D,m,expected", [(-4, 5, 1), (17, 1, 1), (-4, 2, 0), (-4, 3, -1), (8, 3, -1)])
def test_kronecker_examples(D, m, expected):
    assert kronecker(D, m) == expected


@settings(max_examples=300)
@given(st.integers(-10**6, 10**6), st.integers(1, 2000), st.integers(1, 2000))
def test_kronecker_completely_multiplicative(D, m1, m2):
    assert kronecker(D, m1 * m2) == kronecker(D, m1) * kronecker(D, m2)


def test_kronecker_is_legendre_at_odd_primes():
    for p in primes_below(200).tolist()[1:]:
        for D in range(-50, 50):
            assert kronecker(D, p) == legendre(D, p)


@pytest.mark.parametrize("m,expected", [(1905, False), (1665, True), (2, True), (1666, True)])
def test_is_sum_of_two_squares_examples(m, expected):
    assert is_sum_of_two_squares(m) is expected


def test_two_square_decompose_examples():
    # 1665 = 39^2 + 12^2 = 33^2 + 24^2; the canonical form keeps the larger u
    assert two_square_decompose(1665).u == 39 and two_square_decompose(1665).v == 12
    assert (two_square_decompose(2).u, two_square_decompose(2).v) == (1, 1)
    assert two_square_decompose(1905) is None


def test_two_square_decompose_agrees_with_exhaustive_search():
    for m in range(1, 10**5 + 1):
        fast = two_square_decompose(m)
        slow = two_square_search(m)
        assert (fast is None) == (slow is None), m
        if fast is not None:
            assert (fast.u, fast.v) == (slow.u, slow.v), m


def test_two_square_decompose_large():
    m = 999983**2 * 5 * 13 * 29 * 37
    ts = two_square_decompose(m)
    assert ts.u**2 + ts.v**2 == m and ts.u >= ts.v


@pytest.mark.parametrize("p,ab", [(7, (1, 2)), (13, (1, 3)), (31, (1, 5))])
def test_eisenstein_examples(p, ab):
    e = eisenstein_decompose(p)
    assert (e.a, e.b) == ab


def test_eisenstein_all_primes_below_million():
    for p in primes_below(10**6).tolist():
        if p % 3 != 1:
            continue
        e = eisenstein_decompose(p)
        assert 1 <= e.a <= e.b
        assert e.a * e.a + e.a * e.b + e.b * e.b == p


def test_eisenstein_minimal_a_by_search():
    for p in primes_below(3000).tolist():
        if p % 3 != 1:
            continue
        pairs = [(a, b) for a in range(1, 60) for b in range(a, 60) if a * a + a * b + b * b == p]
        assert (eisenstein_decompose(p).a, eisenstein_decompose(p).b) == min(pairs)


def test_eisenstein_rejects_wrong_class():
    with pytest.raises(ValueError):
        eisenstein_decompose(5)
    with pytest.raises(ValueError):
        eisenstein_decompose(25)


@pytest.mark.parametrize("d,N,expected", [(1, 5, 1), (7, 2, 2), (15, 1, 0)])
def test_rho_examples(d, N, expected):
    assert rho(d, N) == expected


def test_rho_matches_enumeration_small():
    for d in range(1, 300):
        for N in range(1, 40):
            assert rho(d, N) == brute_rho(d, N)


def test_rho_multiplicative():
    rng = random.Random(3)
    for _ in range(200):
        d1, d2 = rng.randint(1, 1000), rng.randint(1, 1000)
        if math.gcd(d1, d2) != 1:
            continue
        for N in [rng.randint(1, 10**9) for _ in range(20)]:
            assert rho(d1 * d2, N) == rho(d1, N) * rho(d2, N)


def test_rho_at_odd_primes_is_one_plus_legendre():
    for p in primes_below(501).tolist()[1:]:
        for N in range(1, 101):
            if (2 * N) % p:
                assert rho(p, N) == 1 + legendre(2 * N, p)


def test_rho_bounded_by_tau_on_squarefree_odd():
    N_values = [1, 2, 3, 1002, 2004, 987654]
    for d in range(1, 10**4 + 1, 2):
        if any(e > 1 for _, e in factorize(d)):
            continue
        t = tau(d)
        for N in N_values:
            assert rho(d, N) <= t


def test_rho_large_modulus_formula_path():
    # above the enumeration limit rho goes through prime powers; compare with CRT on parts
    d1, d2 = 2**11 * 9, 7**3 * 11**2 * 13
    for N in (1, 5, 77, 10**9 + 7, 2**40):
        assert rho(d1 * d2, N) == brute_rho(d1, N) * brute_rho(d2, N)
    # 2-power and odd prime power formulas against enumeration
    for pe in (2**12, 3**7, 5**5, 7**4):
        (p, e), = factorize(pe).factors
        for N in range(1, 60):
            assert _rho_prime_power(p, e, 2 * N) == brute_rho(pe, N)
