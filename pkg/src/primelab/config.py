"""Run configuration: sieve cap, threads, output format, RNG seed."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

SIEVE_CAP_ENV = "PRIMELAB_SIEVE_CAP"
DEFAULT_SIEVE_CAP = 1 << 40
DEFAULT_SEED = 0x5EED
DEFAULT_SEGMENT_SIZE = 1 << 20


def sieve_cap() -> int:
    """Active sieve cap: PRIMELAB_SIEVE_CAP env var, else 2^40."""
    raw = os.environ.get(SIEVE_CAP_ENV)
    if raw is None:
        return DEFAULT_SIEVE_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"{SIEVE_CAP_ENV} must be an integer, got {raw!r}") from exc
    if cap < 4:
        raise ValueError(f"{SIEVE_CAP_ENV} must be at least 4, got {cap}")
    return cap


@dataclass
class RunConfig:
    threads: int = 1
    output_format: str = "table"
    seed: int = DEFAULT_SEED
    timestamp: bool = True
    segment_size: int = DEFAULT_SEGMENT_SIZE
    sieve_cap: int = field(default_factory=sieve_cap)

    def __post_init__(self):
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if self.output_format not in ("table", "csv", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")
