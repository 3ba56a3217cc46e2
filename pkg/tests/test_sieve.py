"""Sieve layer: prime generation, counting functions, gaps, determinism."""

from __future__ import annotations

import math
import os
import subprocess
import sys

import numpy as np
import pytest

import primelab as pl
from primelab.config import SIEVE_CAP_ENV
from primelab.errors import SieveCapError
from primelab.sieve import GapRecord, PrimeTable, base_primes, sieve_range

import _oracles as oracles

# confirmed by the trial-division sweep before freezing (the circulating
# "gap 148 after 492113" figure is wrong: 492113 + 114 = 492227 is prime)
PI_1E6 = 78498
LAST_RECORD_1E6 = (492113, 492227, 114)


def test_primes_between_small_window():
    assert pl.primes_between(10, 21).tolist() == [11, 13, 17, 19]
    assert pl.primes_between(0, 3).tolist() == [2]
    assert pl.primes_between(14, 17).tolist() == []
    assert pl.primes_between(17, 17).tolist() == []


def test_primes_between_matches_trial_division(td_primes):
    got = pl.primes_between(0, 10**5 + 1)
    assert got.tolist() == td_primes


def test_primes_between_segment_boundary(td_primes):
    # window straddling the default 2^20 segment boundary, tiny segments
    lo, hi = (1 << 20) - 50, (1 << 20) + 50
    want = [p for p in oracles.trial_division_primes(hi) if lo <= p < hi]
    assert pl.primes_between(lo, hi).tolist() == want
    small = pl.primes_between(2, 5000, segment_size=64)
    assert small.tolist() == [p for p in td_primes if p < 5000]


def test_sieve_range_table():
    table = sieve_range(0, 100)
    assert isinstance(table, PrimeTable)
    assert len(table) == 25
    assert table.primes[-1] == 97
    assert table.count_leq(97) == 25
    assert table.count_leq(96.9) == 24
    assert table.spot_check()
    with pytest.raises(ValueError):
        sieve_range(10, 5)


def test_base_primes(td_primes):
    assert base_primes(1).size == 0
    assert base_primes(2).tolist() == [2]
    assert base_primes(1000).tolist() == [p for p in td_primes if p <= 1000]


def test_prime_pi_contract_points():
    assert pl.prime_pi(100) == 25
    assert pl.prime_pi(10**6) == PI_1E6
    assert pl.prime_pi(1) == 0
    assert pl.prime_pi(2) == 1
    assert pl.prime_pi(2.5) == 1


def test_counting_functions_against_oracle(td_tables):
    pi_t, theta_t, psi_t = td_tables
    for x in [2, 3, 4, 10, 97, 100, 541, 1000, 31397, 65536, 99991, 10**5]:
        assert pl.prime_pi(x) == pi_t[x]
        assert abs(pl.chebyshev_theta(x) - theta_t[x]) < 1e-9
        assert abs(pl.chebyshev_psi(x) - psi_t[x]) < 1e-9


def test_theta_psi_small_closed_forms():
    assert abs(pl.chebyshev_theta(10) - math.log(210)) < 1e-12
    want_psi10 = 3 * math.log(2) + 2 * math.log(3) + math.log(5) + math.log(7)
    assert abs(pl.chebyshev_psi(10) - want_psi10) < 1e-12
    assert pl.chebyshev_theta(1) == 0.0
    assert pl.chebyshev_psi(1) == 0.0
    # psi - theta counts proper prime powers only
    assert pl.chebyshev_psi(100) > pl.chebyshev_theta(100)


def test_nth_prime():
    assert pl.nth_prime(1) == 2
    assert pl.nth_prime(25) == 97
    assert pl.nth_prime(100) == 541
    assert pl.nth_prime(PI_1E6) == 999983
    with pytest.raises(ValueError):
        pl.nth_prime(0)


def test_nth_prime_round_trip():
    for n in [1, 5, 6, 100, 1000, 9592]:
        p = pl.nth_prime(n)
        assert pl.prime_pi(p) == n
        assert pl.prime_pi(p - 1) == n - 1


def test_max_gap_scan_small(td_primes):
    records = pl.max_gap_scan(100)
    assert records[-1] == GapRecord(89, 97, 8)
    tuples = [(r.prime, r.next_prime, r.gap) for r in pl.max_gap_scan(10**5)]
    # oracle: recompute records from the trial-division prime list
    want = []
    best = 0
    for a, b in zip(td_primes, td_primes[1:]):
        if b - a > best:
            best = b - a
            want.append((a, b, best))
    assert tuples == want
    assert pl.max_gap_scan(2) == []


def test_max_gap_scan_million_record():
    rec = pl.max_gap_scan(10**6)[-1]
    assert (rec.prime, rec.next_prime, rec.gap) == LAST_RECORD_1E6
    # certify the record window by trial division alone
    assert oracles.is_prime_td(rec.prime)
    assert oracles.is_prime_td(rec.next_prime)
    assert all(not oracles.is_prime_td(n) for n in range(rec.prime + 1, rec.next_prime))


def test_integer_kth_root_exactness():
    assert pl.integer_kth_root(2**30, 3) == 1024
    assert pl.integer_kth_root(10**18, 2) == 10**9
    assert pl.integer_kth_root(10**18 - 1, 2) == 10**9 - 1
    for n in [2, 3, 5, 7, 10, 99]:
        for k in [2, 3, 5, 7]:
            assert pl.integer_kth_root(n**k, k) == n
            assert pl.integer_kth_root(n**k - 1, k) == n - 1
            assert pl.integer_kth_root(n**k + 1, k) == n
    assert pl.integer_kth_root(0, 5) == 0
    assert pl.integer_kth_root(1, 5) == 1
    with pytest.raises(ValueError):
        pl.integer_kth_root(-1, 2)
    with pytest.raises(ValueError):
        pl.integer_kth_root(10, 0)


def test_is_probable_prime_versus_trial_division():
    for n in range(0, 2000):
        assert pl.is_probable_prime(n) == oracles.is_prime_td(n), n
    # Carmichael numbers and large known primes
    for n in [561, 1105, 1729, 2465, 6601, 8911, 25326001]:
        assert not pl.is_probable_prime(n)
    assert pl.is_probable_prime(2**61 - 1)
    assert pl.is_probable_prime(18446744073709551557)  # largest prime < 2^64
    assert not pl.is_probable_prime(18446744073709551555)


def test_thread_determinism_bit_identical():
    # fixed segmentation + ordered merge: results match as floats, not approx
    for x in [10**5, 10**6]:
        assert pl.prime_pi(x, threads=1) == pl.prime_pi(x, threads=8)
        assert pl.chebyshev_theta(x, threads=1) == pl.chebyshev_theta(x, threads=8)
        assert pl.chebyshev_psi(x, threads=1) == pl.chebyshev_psi(x, threads=8)
    a = pl.primes_between(2, 10**6, threads=1)
    b = pl.primes_between(2, 10**6, threads=8)
    assert np.array_equal(a, b)


def test_kernel_parity_across_backends():
    # the pure-python kernel must reproduce the active backend bit for bit
    code = (
        "import primelab as pl;"
        "print(pl.BACKEND);"
        "print(pl.prime_pi(10**6));"
        "print(repr(pl.chebyshev_theta(10**6)));"
        "print(repr(pl.chebyshev_psi(10**6)))"
    )
    outs = {}
    for kernel in ("python", "cython"):
        env = dict(os.environ, PRIMELAB_KERNEL=kernel)
        r = subprocess.run(
            [sys.executable, "-c", code], env=env, capture_output=True, text=True
        )
        if r.returncode != 0 and kernel == "cython":
            pytest.skip("compiled kernel not built in this environment")
        assert r.returncode == 0, r.stderr
        lines = r.stdout.split()
        assert lines[0] == kernel
        outs[kernel] = lines[1:]
    assert outs["python"] == outs["cython"]


def test_sieve_cap_env(monkeypatch):
    monkeypatch.setenv(SIEVE_CAP_ENV, "1000")
    with pytest.raises(SieveCapError):
        pl.primes_between(2, 2000)
    # cap applies to the requested end, re-read per call
    assert pl.primes_between(2, 1000).size > 0
    monkeypatch.setenv(SIEVE_CAP_ENV, "5000")
    assert pl.primes_between(2, 2000).size == 303  # pi(1999)
