"""Elementary arithmetic functions and exact Bernoulli machinery.

Rational values are `fractions.Fraction` throughout (already reduced, positive
denominator); floats appear only where a function is defined as real-valued.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .sieve import base_primes

__all__ = [
    "factorize",
    "divisors",
    "mobius",
    "euler_phi",
    "von_mangoldt",
    "generalized_von_mangoldt",
    "bernoulli_number",
    "bernoulli_polynomial",
    "bernoulli_poly_eval",
    "chi_bernoulli_number",
    "legendre_valuation",
    "digit_sum",
]

BERNOULLI_CAP = 200

_bernoulli: list[Fraction] = [Fraction(1)]


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization [(p, e), ...] by trial division over sieved primes."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out = []
    rest = n
    for p in base_primes(math.isqrt(n)):
        p = int(p)
        if p * p > rest:
            break
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            out.append((p, e))
    if rest > 1:
        out.append((rest, 1))
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def mobius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def euler_phi(n: int) -> int:
    out = n
    for p, _ in factorize(n):
        out -= out // p
    return out


def von_mangoldt(n: int) -> float:
    """Lambda(n): log p when n is a power of the prime p, else 0."""
    if n < 2:
        return 0.0
    fac = factorize(n)
    if len(fac) == 1:
        return math.log(fac[0][0])
    return 0.0


def generalized_von_mangoldt(n: int, k: int) -> float:
    """Lambda_k(n) = sum_{d | n} mu(d) log^k(n/d). Exposed for k <= 3 only."""
    if not 1 <= k <= 3:
        raise ValueError("generalized_von_mangoldt supports 1 <= k <= 3")
    if n < 1:
        raise ValueError("need n >= 1")
    return math.fsum(mobius(d) * math.log(n / d) ** k for d in divisors(n))


def bernoulli_number(n: int, cap: int = BERNOULLI_CAP) -> Fraction:
    """B_n with B_1 = -1/2, exact, via sum_{k<=m} C(m+1,k) B_k = 0."""
    if n < 0:
        raise ValueError("need n >= 0")
    if n > cap:
        raise ValueError(f"n={n} exceeds the Bernoulli cap {cap}")
    if n > 2 and n % 2 == 1:
        return Fraction(0)
    while len(_bernoulli) <= n:
        m = len(_bernoulli)
        acc = sum(math.comb(m + 1, k) * _bernoulli[k] for k in range(m))
        _bernoulli.append(Fraction(-acc, m + 1))
    return _bernoulli[n]


def bernoulli_polynomial(n: int) -> list[Fraction]:
    """Coefficients of B_n(x) ascending in x: B_n(x) = sum_k C(n,k) B_k x^(n-k)."""
    if n < 0:
        raise ValueError("need n >= 0")
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        coeffs[n - k] = math.comb(n, k) * bernoulli_number(k)
    return coeffs


def bernoulli_poly_eval(n: int, x):
    """B_n(x) by Horner. Exact when x is a Fraction, float otherwise."""
    coeffs = bernoulli_polynomial(n)
    if isinstance(x, Fraction):
        acc = Fraction(0)
    else:
        x = float(x)
        acc = 0.0
        coeffs = [float(c) for c in coeffs]
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def chi_bernoulli_number(n: int, chi) -> complex:
    """Generalized Bernoulli number B_{n,chi} = q^(n-1) sum_t chi(t) B_n(t/q)."""
    if n < 0:
        raise ValueError("need n >= 0")
    q = chi.modulus
    acc = 0j
    for t in range(q):
        v = chi(t)
        if v != 0:
            acc += v * float(bernoulli_poly_eval(n, Fraction(t, q)))
    return acc * q ** (n - 1)


def digit_sum(n: int, p: int) -> int:
    """Sum of the base-p digits of n."""
    if n < 0 or p < 2:
        raise ValueError("need n >= 0 and p >= 2")
    s = 0
    while n:
        s += n % p
        n //= p
    return s


def legendre_valuation(n: int, p: int) -> int:
    """ord_p(n!) = sum_i floor(n / p^i); equals (n - digit_sum(n, p)) / (p - 1)."""
    if n < 0 or p < 2:
        raise ValueError("need n >= 0 and p >= 2")
    total = 0
    q = p
    while q <= n:
        total += n // q
        q *= p
    return total
