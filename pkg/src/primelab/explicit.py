"""Truncated explicit formula for psi(x) driven by a bank of zeta zeros.

psi(x) ~ x - sum_{|gamma| <= T} x^rho / rho - log(2 pi) - (1/2) log(1 - x^-2),
with conjugate zero pairs folded into 2 Re(x^(1/2 + i gamma) / (1/2 + i gamma))
over positive ordinates (all bank zeros are taken on the critical line; the
file format carries no real-part column). The omitted zeros above T
contribute on the order of x T^-1 log(Tx)^2, which `truncation_bound`
reports with implied constant 1; the residual/bound ratio is data, not an
assertion.

At a prime power the formula converges to the midpoint of the jump, so
evaluations within half a unit of one get a warning and `residual_scan`
shifts integer grid points to x + 0.5 up front.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import expi

from .errors import ZeroBankFormatError
from .sieve import chebyshev_psi, integer_kth_root, is_probable_prime
from .zeta import find_zeros

__all__ = [
    "BUILTIN_ZERO_ORDINATES",
    "ZeroBank",
    "ExplicitResult",
    "load_zeros",
    "build_zero_bank",
    "psi_explicit",
    "truncation_bound",
    "residual_scan",
    "li",
    "li_principal",
    "li_offset",
]

# first ten positive ordinates of the critical-line zeros, 13 significant digits
BUILTIN_ZERO_ORDINATES = (
    14.1347251417346,
    21.0220396387715,
    25.0108575801456,
    30.4248761258595,
    32.9350615877391,
    37.5861781588256,
    40.9187190121474,
    43.3270732809149,
    48.0051508811671,
    49.7738324776723,
)


@dataclass(frozen=True)
class ZeroBank:
    """Ascending positive ordinates of zeros on the critical line.

    `coverage` is the height up to which the bank is known complete (the
    search ceiling it was built with). Truncation heights T up to the
    coverage are usable: a bank built to height 100 holds every zero below
    100 even though its last ordinate sits a little under that.
    """

    ordinates: np.ndarray
    source: str = "builtin"
    coverage: float | None = None

    @classmethod
    def builtin(cls) -> "ZeroBank":
        # the ten table zeros are exactly the zeros below 50 (the next is 52.97)
        return cls(np.array(BUILTIN_ZERO_ORDINATES, dtype=np.float64), "builtin", 50.0)

    @classmethod
    def from_ordinates(cls, values, source: str = "memory",
                       coverage: float | None = None) -> "ZeroBank":
        arr = np.asarray(list(values), dtype=np.float64)
        if arr.size == 0:
            raise ZeroBankFormatError("zero bank is empty")
        if np.any(arr <= 0):
            raise ZeroBankFormatError("ordinates must be positive")
        if np.any(np.diff(arr) <= 0):
            raise ZeroBankFormatError("ordinates must be strictly ascending")
        return cls(arr, source, coverage)

    @classmethod
    def from_file(cls, path) -> "ZeroBank":
        values = []
        coverage = None
        with open(path) as fh:
            for i, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line:
                    continue
                if line.startswith("#"):
                    if line[1:].strip().startswith("coverage:"):
                        try:
                            coverage = float(line.split(":", 1)[1])
                        except ValueError:
                            raise ZeroBankFormatError(
                                f"bad coverage comment: {line!r}", line=i
                            ) from None
                    continue
                try:
                    t = float(line)
                except ValueError:
                    raise ZeroBankFormatError(f"not a number: {line!r}", line=i) from None
                if t <= 0:
                    raise ZeroBankFormatError(f"ordinate must be positive, got {t}", line=i)
                if values and t <= values[-1]:
                    raise ZeroBankFormatError(
                        f"ordinates must be strictly ascending, got {t} after {values[-1]}",
                        line=i,
                    )
                values.append(t)
        if not values:
            raise ZeroBankFormatError(f"no ordinates found in {path}")
        return cls(np.array(values, dtype=np.float64), str(path), coverage)

    def save(self, path) -> None:
        # repr round-trips doubles exactly, so export/import is bit-identical
        with open(path, "w") as fh:
            fh.write("# critical-line zero ordinates, one per line, ascending\n")
            if self.coverage is not None:
                fh.write(f"# coverage: {self.coverage!r}\n")
            for t in self.ordinates.tolist():
                fh.write(f"{t!r}\n")

    def __len__(self) -> int:
        return int(self.ordinates.size)

    @property
    def max_ordinate(self) -> float:
        return float(self.ordinates[-1])

    @property
    def ceiling(self) -> float:
        return self.max_ordinate if self.coverage is None else self.coverage

    def below(self, T: float) -> np.ndarray:
        return self.ordinates[self.ordinates <= T]


def load_zeros(source) -> ZeroBank:
    """Builtin ten-zero bank for source="builtin", else parse a text file."""
    if source == "builtin":
        return ZeroBank.builtin()
    return ZeroBank.from_file(source)


def build_zero_bank(t_max: float) -> ZeroBank:
    """Compute ordinates up to t_max and wrap them as a bank."""
    return ZeroBank.from_ordinates(
        find_zeros(t_max), source=f"computed<={t_max}", coverage=float(t_max)
    )


@dataclass(frozen=True)
class ExplicitResult:
    x: float
    T: float
    psi_estimate: float
    sieve_psi: float
    residual: float
    envelope_bound: float


def _is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    for k in range(1, n.bit_length()):
        r = integer_kth_root(n, k)
        if r**k == n and is_probable_prime(r):
            return True
    return False


def _near_prime_power(x: float) -> int | None:
    for n in range(max(2, math.floor(x) - 1), math.floor(x) + 3):
        if abs(x - n) < 0.5 and _is_prime_power(n):
            return n
    return None


def psi_explicit(x: float, T: float, bank: ZeroBank | None = None) -> float:
    """Truncated explicit-formula value of psi at x using zeros up to T."""
    if x < 2:
        raise ValueError("need x >= 2")
    bank = bank or ZeroBank.builtin()
    if T > bank.ceiling:
        raise ValueError(
            f"T={T} exceeds the bank's covered height {bank.ceiling:.4f}; "
            "extend the bank first"
        )
    n = _near_prime_power(x)
    if n is not None:
        warnings.warn(
            f"x={x} is within 0.5 of the prime power {n}; the formula converges "
            "to the jump midpoint there",
            stacklevel=2,
        )
    gammas = bank.below(T)
    rho = 0.5 + 1j * gammas
    terms = 2.0 * math.sqrt(x) * (np.exp(1j * gammas * math.log(x)) / rho).real
    zero_sum = math.fsum(terms.tolist())
    return x - zero_sum - math.log(2 * math.pi) - 0.5 * math.log1p(-x**-2.0)


def truncation_bound(x: float, T: float) -> float:
    """Size of the discarded zero tail: x T^-1 log(Tx)^2, constant 1."""
    if x <= 1 or T <= 1:
        raise ValueError("need x > 1 and T > 1")
    return x / T * math.log(T * x) ** 2


def residual_scan(
    x_grid, T: float, bank: ZeroBank | None = None, *, threads: int = 1
) -> list[ExplicitResult]:
    """Explicit formula vs sieve at each grid point.

    Integer grid points are shifted to x + 0.5 so no evaluation ever lands
    on a prime-power jump.
    """
    bank = bank or ZeroBank.builtin()
    results = []
    for x in x_grid:
        x = float(x)
        if x.is_integer():
            x += 0.5
        pe = psi_explicit(x, T, bank)
        ps = chebyshev_psi(math.floor(x), threads=threads)
        results.append(
            ExplicitResult(
                x=x,
                T=float(T),
                psi_estimate=pe,
                sieve_psi=ps,
                residual=abs(pe - ps),
                envelope_bound=truncation_bound(x, T),
            )
        )
    return results


def li_offset(x: float) -> float:
    """li(x) = integral_2^x dt/log t by adaptive quadrature (abs tol 1e-10)."""
    if x < 2:
        raise ValueError("offset li needs x >= 2")
    if x == 2:
        return 0.0
    val, _ = quad(lambda t: 1.0 / math.log(t), 2.0, x, epsabs=1e-10, epsrel=1e-12, limit=200)
    return float(val)


def li_principal(x: float) -> float:
    """Principal-value li(x) for x > 1 via the globally convergent series

    li(x) = gamma + log log x + sqrt(x) sum_{n>=1} [(-1)^(n-1) (log x)^n /
            (n! 2^(n-1))] sum_{0 <= k <= (n-1)/2} 1/(2k+1).
    """
    if x <= 1:
        raise ValueError("principal-value li needs x > 1")
    L = math.log(x)
    c = L  # (-1)^(n-1) L^n / (n! 2^(n-1)) at n = 1
    inner = 1.0  # harmonic-over-odds partial sum, n = 1 term
    total = 0.0
    n = 1
    while n < 500:
        total += c * inner
        n += 1
        c *= -L / (2 * n)
        if n % 2 == 1:
            inner += 1.0 / n
        if abs(c) * inner < 1e-17 * max(1.0, abs(total)) and n > L:
            break
    return float(np.euler_gamma) + math.log(L) + math.sqrt(x) * total


def li(x: float, variant: str = "offset_from_2") -> float:
    if variant == "offset_from_2":
        return li_offset(x)
    if variant == "principal_value":
        return li_principal(x)
    raise ValueError(f"unknown li variant {variant!r}")


def _li_offset_grid(xs: np.ndarray) -> np.ndarray:
    """Fast vectorized offset li over an array, for scan-scale workloads."""
    li2 = float(expi(math.log(2.0)))
    return expi(np.log(xs)) - li2
