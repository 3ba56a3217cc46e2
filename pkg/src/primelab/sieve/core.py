"""Segmented prime sieve and the counting functions built on it.

Work is split into fixed segments; each segment is sieved independently (so a
thread pool can process them in any order) and partial results are merged in
segment index order with math.fsum. That makes every public value here
bit-identical across thread counts and across the compiled/pure kernels.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..config import DEFAULT_SEGMENT_SIZE, sieve_cap
from ..errors import SieveCapError

_FORCED = os.environ.get("PRIMELAB_KERNEL")
if _FORCED == "python":
    from . import _kernel_py as _kernel

    BACKEND = "python"
elif _FORCED == "cython":
    from . import _kernel_cy as _kernel  # type: ignore[no-redef]

    BACKEND = "cython"
else:
    try:
        from . import _kernel_cy as _kernel  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        from . import _kernel_py as _kernel

        BACKEND = "python"

_base_cache: dict[int, np.ndarray] = {}

# Deterministic Miller-Rabin witness set, valid far beyond 2^64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def base_primes(limit: int) -> np.ndarray:
    """All primes <= limit via a plain boolean sieve (cached, grown in powers of 2)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    key = 1 << max(4, (limit - 1).bit_length())
    cached = _base_cache.get(key)
    if cached is None:
        flags = np.ones(key + 1, dtype=bool)
        flags[:2] = False
        for p in range(2, math.isqrt(key) + 1):
            if flags[p]:
                flags[p * p :: p] = False
        cached = np.flatnonzero(flags).astype(np.int64)
        _base_cache[key] = cached
    return cached[: np.searchsorted(cached, limit, side="right")]


def _check_cap(hi: int) -> None:
    cap = sieve_cap()
    if hi - 1 > cap:
        raise SieveCapError(
            f"range end {hi - 1} exceeds sieve cap {cap}; raise PRIMELAB_SIEVE_CAP to override"
        )


def _segment_primes(seg: tuple[int, int, np.ndarray]) -> np.ndarray:
    lo, hi, base = seg
    flags = np.ones(hi - lo, dtype=np.uint8)
    _kernel.mark_segment(lo, hi, base, flags)
    primes = np.flatnonzero(flags).astype(np.int64)
    primes += lo
    if lo <= 1:
        primes = primes[primes >= 2]
    return primes


def iter_prime_segments(lo, hi, *, segment_size: int | None = None, threads: int = 1):
    """Yield primes in [lo, hi) as one ascending int64 array per segment, in order."""
    lo = max(2, int(lo))
    hi = int(hi)
    if hi <= lo:
        return
    _check_cap(hi)
    size = segment_size or DEFAULT_SEGMENT_SIZE
    base = base_primes(math.isqrt(hi - 1))
    segs = [(a, min(a + size, hi), base) for a in range(lo, hi, size)]
    if threads <= 1 or len(segs) == 1:
        for seg in segs:
            yield _segment_primes(seg)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            yield from pool.map(_segment_primes, segs)


def primes_between(lo, hi, *, segment_size: int | None = None, threads: int = 1) -> np.ndarray:
    """Ascending array of all primes in [lo, hi)."""
    chunks = list(iter_prime_segments(lo, hi, segment_size=segment_size, threads=threads))
    if not chunks:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(chunks)


@dataclass(frozen=True)
class PrimeTable:
    """Primes of a half-open range, with the range recorded alongside."""

    lo: int
    hi: int
    primes: np.ndarray

    def __len__(self) -> int:
        return int(self.primes.size)

    def count_leq(self, x) -> int:
        return int(np.searchsorted(self.primes, math.floor(x), side="right"))

    def spot_check(self, samples: int = 32, seed: int = 0x5EED) -> bool:
        """Cross-check a random sample against deterministic Miller-Rabin."""
        if self.primes.size == 0:
            return True
        rng = np.random.default_rng(seed)
        idx = rng.integers(0, self.primes.size, size=min(samples, self.primes.size))
        return all(is_probable_prime(int(p)) for p in self.primes[idx])


def sieve_range(lo, hi, *, threads: int = 1) -> PrimeTable:
    lo = int(lo)
    hi = int(hi)
    if hi < lo:
        raise ValueError("empty range: hi < lo")
    return PrimeTable(lo, hi, primes_between(lo, hi, threads=threads))


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 64-bit inputs (fixed witness set)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_pi(x, *, threads: int = 1) -> int:
    """pi(x): the number of primes <= x."""
    if x < 2:
        return 0
    n = math.floor(x)
    return sum(seg.size for seg in iter_prime_segments(2, n + 1, threads=threads))


def chebyshev_theta(x, *, threads: int = 1) -> float:
    """theta(x) = sum of log p over primes p <= x, fsum-compensated."""
    if x < 2:
        return 0.0
    n = math.floor(x)
    partials = [
        math.fsum(np.log(seg.astype(np.float64)).tolist())
        for seg in iter_prime_segments(2, n + 1, threads=threads)
    ]
    return math.fsum(partials)


def integer_kth_root(n: int, k: int) -> int:
    """floor(n^(1/k)) computed exactly (float seed, integer correction)."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0, k >= 1")
    if n in (0, 1) or k == 1:
        return n
    r = int(round(n ** (1.0 / k)))
    while r > 1 and r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def chebyshev_psi(x, *, threads: int = 1) -> float:
    """psi(x) = sum over prime powers p^k <= x of log p = sum_k theta(x^(1/k))."""
    if x < 2:
        return 0.0
    n = math.floor(x)
    parts = [chebyshev_theta(n, threads=threads)]
    k = 2
    while True:
        r = integer_kth_root(n, k)
        if r < 2:
            break
        parts.append(chebyshev_theta(r, threads=threads))
        k += 1
    return math.fsum(parts)


def nth_prime(n: int) -> int:
    """The n-th prime, 1-indexed (nth_prime(1) = 2)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n < 6:
        return (2, 3, 5, 7, 11)[n - 1]
    ln = math.log(n)
    bound = int(n * (ln + math.log(ln))) + 10
    seen = 0
    for seg in iter_prime_segments(2, bound + 1):
        if seen + seg.size >= n:
            return int(seg[n - seen - 1])
        seen += seg.size
    raise RuntimeError(f"prime bound {bound} too small for n={n}")  # unreachable


@dataclass(frozen=True)
class GapRecord:
    prime: int
    next_prime: int
    gap: int


def max_gap_scan(limit: int, *, threads: int = 1) -> list[GapRecord]:
    """Record-setting prime gaps with both endpoints <= limit, in order."""
    if limit < 3:
        return []
    records: list[GapRecord] = []
    best = 0
    prev = None
    for seg in iter_prime_segments(2, limit + 1, threads=threads):
        if seg.size == 0:
            continue
        if prev is not None:
            g = int(seg[0]) - prev
            if g > best:
                best = g
                records.append(GapRecord(prev, int(seg[0]), g))
        gaps = np.diff(seg)
        for i in np.flatnonzero(gaps > best):
            g = int(gaps[i])
            if g > best:
                best = g
                records.append(GapRecord(int(seg[i]), int(seg[i + 1]), g))
        prev = int(seg[-1])
    return records
