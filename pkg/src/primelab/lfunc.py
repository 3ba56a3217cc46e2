"""Dirichlet L-functions: direct evaluation, special values, completed form.

Non-principal characters are summed directly to M = R*q and the tail is
restored per residue class through an Euler-Maclaurin expansion of the
shifted Hurwitz sums (an iterated Abel summation of the periodic partial
sums). The certified truncation bound is reported as `est_error`. The pole
parts w^(1-s)/(s-1) of the residue classes cancel (sum of chi over a period
is zero), and are grouped as sum_a chi(a) (w_a^(1-s) - 1)/(s-1), a form that
stays finite at s = 1, so L(1, chi) is evaluated directly.

Principal characters route through zeta: L(s, chi_0) = zeta(s) * prod_{p | q}
(1 - p^(-s)).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .arith import chi_bernoulli_number, factorize
from .characters import DirichletCharacter, gauss_sum
from .errors import NonPrimitiveError, ParityError, PoleError
from .sieve import iter_prime_segments
from .zeta import hurwitz_tail_block, stirling_loggamma, zeta_alternating

__all__ = [
    "LValue",
    "l_value",
    "l_special_value",
    "positive_special_value_residuals",
    "completed_lambda",
    "root_number",
    "functional_equation_residual",
    "euler_product_value",
    "log_derivative_residual",
]


@dataclass(frozen=True)
class LValue:
    s: complex
    modulus: int
    index: int
    value: complex
    est_error: float
    method: str


def _pole_ratio(s: complex, w: float) -> complex:
    """(w^(1-s) - 1) / (s - 1), stable through s = 1."""
    z = (1 - s) * math.log(w)
    if abs(z) < 1e-6:
        return -math.log(w) * (1 + z / 2 + z * z / 6 + z**3 / 24)
    return (cmath.exp(z) - 1.0) / (s - 1.0)


def l_value(s, chi: DirichletCharacter, *, order: int = 12, tail_start: int | None = None) -> LValue:
    """L(s, chi) with a certified truncation estimate in `est_error`."""
    s = complex(s)
    if s.real <= 0:
        raise ValueError(
            "l_value is restricted to Re(s) > 0; nonpositive integer points "
            "are covered exactly by l_special_value"
        )
    q = chi.modulus
    if chi.is_principal:
        if s == 1:
            raise PoleError("L(s, principal character) has a pole at s = 1")
        value = zeta_alternating(s)
        for p, _ in factorize(q):
            value *= 1.0 - cmath.exp(-s * math.log(p))
        return LValue(s, q, chi.index, value, 1e-10 * max(1.0, abs(value)), "principal-zeta")

    R = tail_start or max(64, int(math.ceil(2.2 * (abs(s.imag) + order))))
    M = R * q
    ns = np.arange(1, M + 1, dtype=np.float64)
    log_ns = np.log(ns)
    vals = chi.value_table()[np.arange(1, M + 1) % q]
    head = complex(np.sum(vals * np.exp(-s * log_ns)))
    head_mag = float(np.sum(np.abs(vals) * np.exp(-s.real * log_ns)))

    qfac = cmath.exp(-s * math.log(q))
    tail = 0j
    bound = 0.0
    table = chi.value_table()
    for a in range(1, q + 1):
        c = table[a % q]
        if c == 0:
            continue
        w = R + a / q
        block, rem = hurwitz_tail_block(s, w, order)
        tail += c * (_pole_ratio(s, w) + block)
        bound += abs(c) * rem
    value = complex(head + qfac * tail)
    # rounding allowance: pairwise head summation plus phase error per term
    noise = 2.3e-16 * head_mag * max(math.log2(M), abs(s.imag) * math.log(M))
    est = float(abs(qfac) * bound) + noise + 1e-14
    return LValue(s, q, chi.index, value, est, "partial-sum-em-tail")


def l_special_value(n: int, chi: DirichletCharacter) -> complex:
    """L(1-n, chi) = -B_{n,chi}/n for n >= 1 with n matching the parity of chi."""
    if n < 1:
        raise ValueError("need n >= 1")
    if not chi.is_primitive():
        raise NonPrimitiveError(
            f"special values need a primitive character; q={chi.modulus} "
            f"index={chi.index} has conductor {chi.conductor()}"
        )
    if n % 2 != chi.parity:
        raise ParityError(
            f"n={n} has the wrong parity for a character with chi(-1) = "
            f"{'+1' if chi.parity == 0 else '-1'}"
        )
    return -chi_bernoulli_number(n, chi) / n


def positive_special_value_residuals(n: int, chi: DirichletCharacter) -> dict:
    """Two closed forms for L(n, chi) at positive n = parity(chi) (mod 2).

    Returns the direct value together with the residuals of two candidate
    Gauss-sum/Bernoulli expressions (they disagree in the placement of a
    factor; both are reported as data, neither is asserted anywhere):

      grouped:  (-1)^(1+(n-d)/2) (2 pi/q)^n tau(chi) B_{n, conj chi} / (2 i^d n!)
      variant:  -(2 pi i / q)^n tau(chi) B_{n, conj chi} / (2n)!
    """
    _require_primitive(chi)
    if n < 1 or n % 2 != chi.parity:
        raise ParityError(f"n={n} violates the parity condition for this character")
    d = chi.parity
    direct = l_value(float(n), chi).value
    b = chi_bernoulli_number(n, chi.conjugate())
    tau = gauss_sum(chi)
    q = chi.modulus
    grouped = (
        (-1) ** (1 + (n - d) // 2)
        * (2 * math.pi / q) ** n
        * tau
        * b
        / (2 * (1j**d) * math.factorial(n))
    )
    variant = -((2j * math.pi / q) ** n) * tau * b / math.factorial(2 * n)
    return {
        "n": n,
        "modulus": q,
        "index": chi.index,
        "direct": direct,
        "grouped_form": grouped,
        "grouped_residual": abs(direct - grouped),
        "variant_form": variant,
        "variant_residual": abs(direct - variant),
    }


def _require_primitive(chi: DirichletCharacter) -> None:
    if chi.is_principal or not chi.is_primitive():
        raise NonPrimitiveError(
            f"character q={chi.modulus} index={chi.index} is not primitive non-principal"
        )


def completed_lambda(s, chi: DirichletCharacter, *, order: int = 12) -> complex:
    """Lambda(s, chi) = (q/pi)^((s+d)/2) Gamma((s+d)/2) L(s, chi), chi primitive."""
    _require_primitive(chi)
    s = complex(s)
    d = chi.parity
    z = (s + d) / 2
    log_pref = z * math.log(chi.modulus / math.pi)
    return cmath.exp(log_pref + stirling_loggamma(z)) * l_value(s, chi, order=order).value


def root_number(chi: DirichletCharacter) -> complex:
    """epsilon(chi) = i^(-parity) tau(chi) / sqrt(q); modulus 1 for primitive chi."""
    _require_primitive(chi)
    eps = gauss_sum(chi) / math.sqrt(chi.modulus)
    if chi.parity == 1:
        eps *= -1j
    return eps


def functional_equation_residual(s, chi: DirichletCharacter, *, order: int = 12) -> float:
    """|Lambda(s, chi) - epsilon(chi) Lambda(1-s, conj(chi))| for primitive chi."""
    _require_primitive(chi)
    s = complex(s)
    lhs = completed_lambda(s, chi, order=order)
    rhs = root_number(chi) * completed_lambda(1 - s, chi.conjugate(), order=order)
    return abs(lhs - rhs)


def euler_product_value(s, chi: DirichletCharacter, prime_limit: int) -> complex:
    """prod_{p <= prime_limit} (1 - chi(p) p^(-s))^(-1); converges for Re(s) > 1."""
    s = complex(s)
    if s.real <= 1:
        raise ValueError("Euler product needs Re(s) > 1")
    table = chi.value_table()
    q = chi.modulus
    value = 1.0 + 0j
    for seg in iter_prime_segments(2, prime_limit + 1):
        for p in seg.tolist():
            c = table[p % q]
            if c != 0:
                value /= 1.0 - c * cmath.exp(-s * math.log(p))
    return value


def log_derivative_residual(
    chi: DirichletCharacter, *, s: float = 2.0, n_terms: int = 10**6, h: float = 1e-5
) -> float:
    """| -L'/L(s) - sum_{n <= N} chi(n) Lambda(n) n^(-s) |.

    The left side is a central difference of log L; the right side sums the
    von Mangoldt expansion over prime powers. Truncation of the Dirichlet
    series contributes about log(N)/N at s = 2, so n_terms = 1e6 supports
    1e-5 agreement and the central difference contributes ~1e-7.
    """
    table = chi.value_table()
    q = chi.modulus
    acc = 0j
    for seg in iter_prime_segments(2, n_terms + 1):
        ps = seg.astype(np.float64)
        logs = np.log(ps)
        acc += complex(np.sum(table[seg % q] * logs * ps ** (-s)))
        # prime powers p^k <= N contribute chi(p^k) log p / p^(ks)
        for p in seg[seg <= math.isqrt(n_terms)].tolist():
            pk = p * p
            while pk <= n_terms:
                acc += table[pk % q] * math.log(p) * pk ** (-s)
                pk *= p
    lp = cmath.log(l_value(s + h, chi).value) - cmath.log(l_value(s - h, chi).value)
    lhs = -lp / (2 * h)
    return abs(lhs - acc)
