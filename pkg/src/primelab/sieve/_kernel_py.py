"""Pure-numpy sieve kernel: fallback when the compiled extension is absent.

Semantics must match `_kernel_cy.mark_segment` exactly: both kernels mark the
same flag bytes, so every downstream result is identical between backends.
"""

from __future__ import annotations

import numpy as np


def mark_segment(lo: int, hi: int, base: np.ndarray, flags: np.ndarray) -> None:
    """Zero `flags[n - lo]` for every n in [lo, hi) composite w.r.t. `base`.

    `base` must hold all primes <= sqrt(hi - 1) in ascending order. Marking
    starts at p*p, so base primes inside the segment stay flagged.
    """
    for p in base:
        p = int(p)
        pp = p * p
        if pp >= hi:
            break
        start = pp if pp >= lo else lo + (-lo) % p
        flags[start - lo :: p] = 0
