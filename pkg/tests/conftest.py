"""Session fixtures: expensive oracles and zero banks built once."""

from __future__ import annotations

import pytest

import primelab as pl

import _oracles as oracles


ORACLE_LIMIT = 10**5


@pytest.fixture(scope="session")
def td_primes():
    """Trial-division primes to 1e5 (the independent ground truth)."""
    return oracles.trial_division_primes(ORACLE_LIMIT)


@pytest.fixture(scope="session")
def td_tables(td_primes):
    """(pi, theta, psi) prefix tables to 1e5 from trial division."""
    return oracles.pi_theta_psi_tables(ORACLE_LIMIT, td_primes)


@pytest.fixture(scope="session")
def bank100():
    return pl.build_zero_bank(100.0)


@pytest.fixture(scope="session")
def bank500():
    return pl.build_zero_bank(500.0)


@pytest.fixture(scope="session")
def chi4():
    # the nonprincipal character mod 4
    grp = pl.character_group(4)
    return next(c for c in grp.characters() if not c.is_principal)


@pytest.fixture(scope="session")
def chi3():
    grp = pl.character_group(3)
    return next(c for c in grp.characters() if not c.is_principal)
