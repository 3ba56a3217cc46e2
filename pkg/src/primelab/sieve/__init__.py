from .core import (
    BACKEND,
    GapRecord,
    PrimeTable,
    base_primes,
    chebyshev_psi,
    chebyshev_theta,
    integer_kth_root,
    is_probable_prime,
    iter_prime_segments,
    max_gap_scan,
    nth_prime,
    prime_pi,
    primes_between,
    sieve_range,
)

__all__ = [
    "BACKEND",
    "GapRecord",
    "PrimeTable",
    "base_primes",
    "chebyshev_psi",
    "chebyshev_theta",
    "integer_kth_root",
    "is_probable_prime",
    "iter_prime_segments",
    "max_gap_scan",
    "nth_prime",
    "prime_pi",
    "primes_between",
    "sieve_range",
]
