"""Exact integer arithmetic: gcd conventions, trial-division factorization,
the classical multiplicative functions phi and tau, Dirichlet convolution,
and the iterated divisor function tau_r.

Everything here works on plain Python ints, so all values are exact at any
size. The only state is the tau_r memo table, which is deterministic and
safe to share across threads.
"""

from __future__ import annotations

from functools import cache
from math import comb, gcd
from typing import Callable, Iterable

# Trial division up to sqrt(n) is the factoring engine. The hard ceiling
# below keeps requests in a range where that loop terminates in reasonable
# time; the intended working range of the package is n <= 1e7.
FACTORIZE_MAX = 2**63 - 1

Factorization = list[tuple[int, int]]
ArithFunction = Callable[[int], int]


def _check_positive(name: str, value: int) -> None:
    if value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")


def gcd_many(n: int, terms: Iterable[int]) -> int:
    """gcd of the modulus n and every term.

    Conventions: gcd_many(n, []) = n and gcd(n, 0) = n, so zero terms are
    neutral. The result always divides n.
    """
    _check_positive("n", n)
    return gcd(n, *terms)


def factorize(n: int) -> Factorization:
    """Prime factorization of n as ascending (prime, exponent) pairs.

    Returns the empty list exactly when n = 1. Raises ValueError outside
    [1, FACTORIZE_MAX].
    """
    if not 1 <= n <= FACTORIZE_MAX:
        raise ValueError(f"factorize expects 1 <= n <= {FACTORIZE_MAX}, got {n!r}")
    pairs = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            a = 0
            while m % p == 0:
                m //= p
                a += 1
            pairs.append((p, a))
        p += 1 if p == 2 else 2
    if m > 1:
        pairs.append((m, 1))
    return pairs


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending (so divisors(1) = [1])."""
    divs = [1]
    for p, a in factorize(n):
        divs = [d * p**k for d in divs for k in range(a + 1)]
    divs.sort()
    return divs


def euler_phi(n: int) -> int:
    """Euler's totient phi(n), computed from the factorization; phi(1) = 1."""
    phi = 1
    for p, a in factorize(n):
        phi *= p ** (a - 1) * (p - 1)
    return phi


def tau(n: int) -> int:
    """Number of divisors of n: the product of (exponent + 1)."""
    t = 1
    for _, a in factorize(n):
        t *= a + 1
    return t


def const_one(_m: int) -> int:
    """The constant-one arithmetic function, the unit of iterated divisor sums."""
    return 1


def dirichlet_convolve(f: ArithFunction, g: ArithFunction, n: int) -> int:
    """(f * g)(n) = sum over d | n of f(d) * g(n / d)."""
    return sum(f(d) * g(n // d) for d in divisors(n))


@cache
def _tau_r(n: int, r: int) -> int:
    if r == 1:
        return tau(n)
    return sum(_tau_r(d, r - 1) for d in divisors(n))


def tau_r_recursive(n: int, r: int) -> int:
    """Iterated divisor function: tau_1 = tau, tau_r(n) = sum_{d|n} tau_{r-1}(d).

    Memoized on (divisor, level); exact for any arguments.
    """
    _check_positive("n", n)
    _check_positive("r", r)
    return _tau_r(n, r)


def tau_r_closed(n: int, r: int) -> int:
    """tau_r via its prime-power closed form: product of C(alpha + r, r).

    This is the fast path; tau_r_recursive is the defining recursion and
    the two must agree everywhere.
    """
    _check_positive("n", n)
    _check_positive("r", r)
    out = 1
    for _, a in factorize(n):
        out *= comb(a + r, r)
    return out


def tau2_explicit(n: int) -> int:
    """tau_2 straight from the factorization shape: (1/2^s) prod (a_i+1)(a_i+2).

    The product is always divisible by 2^s because each factor is a product
    of two consecutive integers; the division is performed exactly.
    """
    pairs = factorize(n)
    prod = 1
    for _, a in pairs:
        prod *= (a + 1) * (a + 2)
    q, rem = divmod(prod, 2 ** len(pairs))
    assert rem == 0, f"2^s does not divide the exponent product for n={n}"
    return q
