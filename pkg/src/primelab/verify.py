"""Empirical verification harnesses: short-interval prime presence, the
Mertens partial sum, exact partial-summation identities, and error-term
ratio scans against sieve ground truth.

The identity checks integrate step functions exactly: between consecutive
jump points the integrand's antiderivative is evaluated in closed form, so
each identity becomes a finite sum of log/reciprocal differences and the
residual reflects only float rounding. There is no quadrature tolerance to
tune.

Scans that sample use an explicit seed (default 0x5EED) recorded in the
report, so failure lists and margins reproduce exactly.
"""

from __future__ import annotations

import math
import random
import time

import numpy as np

from .characters import DirichletCharacter
from .config import DEFAULT_SEED
from .errors import NonCoprimeResidueError
from .explicit import _li_offset_grid
from .report import VerificationReport
from .sieve import integer_kth_root, iter_prime_segments, primes_between

__all__ = [
    "sample_points",
    "verify_bertrand",
    "verify_short_interval_sqrt",
    "verify_short_interval_power",
    "short_interval_theta_margins",
    "mertens_estimate",
    "partial_summation_identities",
    "ap_partial_summation_identities",
    "pnt_error_scan",
]

EIGHT_PI_INV = 1.0 / (8.0 * math.pi)


def sample_points(lo: int, hi: int, n: int, seed: int = DEFAULT_SEED) -> list[int]:
    """n log-uniform integer samples in [lo, hi], sorted, deduplicated."""
    if not 1 <= lo <= hi:
        raise ValueError("need 1 <= lo <= hi")
    rng = random.Random(seed)
    out = {lo, hi}
    while len(out) < min(n, hi - lo + 1):
        out.add(int(round(math.exp(rng.uniform(math.log(lo), math.log(hi))))))
    return sorted(out)


def verify_bertrand(limit: int, *, threads: int = 1) -> VerificationReport:
    """Confirm a prime in [x, 2x] for every integer x in [1, limit].

    Margin is (first prime >= x minus x) / x; the report's details also
    carry the witness of the largest absolute distance, which lands just
    past a record prime gap.
    """
    t0 = time.perf_counter()
    if limit < 1:
        raise ValueError("need limit >= 1")
    primes = primes_between(2, 2 * limit + 1, threads=threads)
    xs = np.arange(1, limit + 1, dtype=np.int64)
    nxt = primes[np.searchsorted(primes, xs, side="left")]
    margins = (nxt - xs) / xs
    bad = nxt > 2 * xs
    failures = [{"x": int(x)} for x in xs[bad]]
    i_rel = int(np.argmax(margins))
    i_abs = int(np.argmax(nxt - xs))
    return VerificationReport(
        theorem_id="bertrand-interval",
        range=(1, limit),
        samples=int(limit),
        failures=failures,
        extremal={"x": int(xs[i_rel]), "witness": int(nxt[i_rel]), "margin": float(margins[i_rel])},
        runtime=time.perf_counter() - t0,
        details={
            "max_distance": {
                "x": int(xs[i_abs]),
                "witness": int(nxt[i_abs]),
                "distance": int(nxt[i_abs] - xs[i_abs]),
            }
        },
    )


def _presence_report(
    theorem_id: str,
    x_samples,
    y_of,
    *,
    small_x_threshold: int = 100,
    threads: int = 1,
    seed: int | None = None,
    extra_details: dict | None = None,
) -> VerificationReport:
    """Shared engine: does [x, x + y(x)] contain a prime, per sample?"""
    t0 = time.perf_counter()
    xs = sorted({int(x) for x in x_samples})
    if not xs or xs[0] < 1:
        raise ValueError("samples must be positive integers")
    ys = [max(0, int(y_of(x))) for x in xs]
    lo, hi = xs[0], max(x + y for x, y in zip(xs, ys)) + 1
    counts = []
    if hi - lo <= 1 << 26:
        primes = primes_between(lo, hi, threads=threads)
        left = np.searchsorted(primes, np.array(xs, dtype=np.int64), side="left")
        right = np.searchsorted(
            primes, np.array([x + y for x, y in zip(xs, ys)], dtype=np.int64), side="right"
        )
        counts = (right - left).tolist()
    else:
        for x, y in zip(xs, ys):
            counts.append(int(primes_between(x, x + y + 1, threads=threads).size))
    failures, small = [], []
    extremal = None
    rows = []
    for x, y, c in zip(xs, ys, counts):
        rows.append({"x": x, "y": y, "primes_found": c, "pass": c > 0})
        if c == 0:
            (failures if x > small_x_threshold else small).append({"x": x, "y": y})
        if extremal is None or c < extremal["margin"]:
            extremal = {"x": x, "y": y, "margin": c}
    details = {"small_x_threshold": small_x_threshold, "small_x_misses": small}
    if extra_details:
        details.update(extra_details)
    return VerificationReport(
        theorem_id=theorem_id,
        range=(xs[0], xs[-1]),
        samples=len(xs),
        failures=failures,
        extremal=extremal,
        runtime=time.perf_counter() - t0,
        seed=seed,
        details=details,
        rows=rows,
    )


def verify_short_interval_sqrt(
    x_samples, epsilon: float, *, small_x_threshold: int = 100, threads: int = 1,
    seed: int | None = None,
) -> VerificationReport:
    """Prime presence in [x, x + ceil(sqrt(x) (log x)^epsilon)] per sample.

    The margin is the prime count found; the extremal witness is the
    thinnest interval. Failures above the small-x threshold are headline
    findings; below it they are recorded but not counted.
    """
    if epsilon <= 0:
        raise ValueError("need epsilon > 0")

    def y_of(x: int) -> int:
        return math.ceil(math.sqrt(x) * math.log(x) ** epsilon) if x > 1 else 1

    return _presence_report(
        "short-interval-sqrt",
        x_samples,
        y_of,
        small_x_threshold=small_x_threshold,
        threads=threads,
        seed=seed,
        extra_details={"epsilon": epsilon, "interval": "[x, x + ceil(sqrt(x) log(x)^eps)]"},
    )


def verify_short_interval_power(
    x_samples, epsilon: float, *, small_x_threshold: int = 100, threads: int = 1,
    seed: int | None = None,
) -> VerificationReport:
    """Prime presence in [x, x + ceil(x / (log x)^(1 - epsilon))] per sample."""
    if epsilon <= 0:
        raise ValueError("need epsilon > 0")

    def y_of(x: int) -> int:
        return math.ceil(x / math.log(x) ** (1.0 - epsilon)) if x > 1 else 1

    return _presence_report(
        "short-interval-power",
        x_samples,
        y_of,
        small_x_threshold=small_x_threshold,
        threads=threads,
        seed=seed,
        extra_details={"epsilon": epsilon, "interval": "[x, x + ceil(x/log(x)^(1-eps))]"},
    )


def short_interval_theta_margins(
    x: int, y: int, *, c0: float = 1.0, threads: int = 1
) -> tuple[float, float]:
    """Signed margins of S = sum_{x < p <= x+y} log p against y(1 +- c loglog x/log x).

    Returns (S - y(1 - c0 loglog x / log x), y(1 + 2 loglog x / log x) - S).
    Positive margins mean S sits inside the band; the signs are data, not
    an assertion, since the band's lower constant is a free parameter.
    """
    if x < 1000:
        raise ValueError("need x >= 1000 so loglog x is well behaved")
    if not 0 <= y <= x:
        raise ValueError("need 0 <= y <= x")
    ps = primes_between(x + 1, x + y + 1, threads=threads)
    S = math.fsum(np.log(ps).tolist()) if ps.size else 0.0
    r = math.log(math.log(x)) / math.log(x)
    return S - y * (1.0 - c0 * r), y * (1.0 + 2.0 * r) - S


def mertens_estimate(x: int, *, threads: int = 1) -> tuple[float, float]:
    """(sum of 1/p over p <= x, that sum minus log log x)."""
    if x < 100:
        raise ValueError("need x >= 100")
    parts = []
    for seg in iter_prime_segments(2, x + 1, threads=threads):
        parts.append(math.fsum(np.reciprocal(seg.astype(np.float64)).tolist()))
    s = math.fsum(parts)
    return s, s - math.log(math.log(x))


def _step_integral(points: np.ndarray, prefix: np.ndarray, F, x: float) -> float:
    """integral_2^x S(t) w(t) dt for S constant = prefix[j] on [points[j], points[j+1]).

    F is the antiderivative of the weight w; points are the ascending jump
    locations <= x with points[0] >= 2. Exact up to float rounding.
    """
    if points.size == 0:
        return 0.0
    uppers = np.append(points[1:].astype(np.float64), float(x))
    terms = prefix * (F(uppers) - F(points.astype(np.float64)))
    return math.fsum(terms.tolist())


def _step_integral_complex(points, prefix, F, x) -> complex:
    if points.size == 0:
        return 0j
    uppers = np.append(points[1:].astype(np.float64), float(x))
    dF = F(uppers) - F(points.astype(np.float64))
    return complex(
        math.fsum((prefix.real * dF).tolist()), math.fsum((prefix.imag * dF).tolist())
    )


def _F_inv_log(t):  # antiderivative of 1/(t log^2 t)
    return -1.0 / np.log(t)


def _F_log(t):  # antiderivative of 1/t
    return np.log(t)


def _F_inv(t):  # antiderivative of 1/t^2
    return -1.0 / t


def _F_inv_tlog(t):  # antiderivative of (1 + log t)/(t^2 log^2 t)
    return -1.0 / (t * np.log(t))


def _prime_powers(x: int, threads: int = 1):
    """(points, logp) over p^k <= x, k >= 1, sorted by the power's value."""
    primes = primes_between(2, x + 1, threads=threads)
    pts = [primes]
    wts = [np.log(primes)]
    k = 2
    while True:
        r = integer_kth_root(x, k)
        if r < 2:
            break
        base = primes_between(2, r + 1, threads=threads)
        pts.append(base.astype(np.int64) ** k)
        wts.append(np.log(base))
        k += 1
    points = np.concatenate(pts)
    weights = np.concatenate(wts)
    order = np.argsort(points, kind="stable")
    return points[order], weights[order]


def partial_summation_identities(x: int, *, threads: int = 1) -> dict[str, float]:
    """Relative residuals of five exact partial-summation identities at x.

    Keys i..v follow the identity family for pi/theta/psi and the prime
    reciprocal sum. Key ii compares theta(x) against
    pi(x) log x - integral_2^x pi(t)/t dt, the form partial summation
    actually produces; ii_printed keeps the circulating variant with
    integrand pi(t)/(t log^2 t), whose large residual is reported as data.
    """
    if x < 10:
        raise ValueError("need x >= 10")
    primes = primes_between(2, x + 1, threads=threads)
    logs = np.log(primes)
    pi_x = int(primes.size)
    pi_prefix = np.arange(1, pi_x + 1, dtype=np.float64)
    theta_prefix = np.cumsum(logs)
    theta_x = math.fsum(logs.tolist())
    lx = math.log(x)

    pp_points, pp_logs = _prime_powers(x, threads)
    psi_prefix = np.cumsum(pp_logs)
    psi_x = math.fsum(pp_logs.tolist())
    pp_k = np.log(pp_points.astype(np.float64)) / pp_logs  # exponent k of each power

    def rel(lhs: float, rhs: float) -> float:
        return abs(lhs - rhs) / max(1.0, abs(lhs))

    res: dict[str, float] = {}
    res["i"] = rel(pi_x, theta_x / lx + _step_integral(primes, theta_prefix, _F_inv_log, x))
    res["ii"] = rel(theta_x, pi_x * lx - _step_integral(primes, pi_prefix, _F_log, x))
    res["ii_printed"] = rel(
        theta_x, pi_x * lx - _step_integral(primes, pi_prefix, _F_inv_log, x)
    )
    lhs_iii = math.fsum((1.0 / pp_k).tolist())
    res["iii"] = rel(
        lhs_iii, psi_x / lx + _step_integral(pp_points, psi_prefix, _F_inv_log, x)
    )
    lhs_iv = math.fsum((1.0 / primes.astype(np.float64)).tolist())
    res["iv"] = rel(lhs_iv, pi_x / float(x) + _step_integral(primes, pi_prefix, _F_inv, x))
    lhs_v = math.fsum((pp_k * pp_logs * pp_logs).tolist())
    res["v"] = rel(lhs_v, psi_x * lx - _step_integral(pp_points, psi_prefix, _F_log, x))
    return res


def ap_partial_summation_identities(
    x: int, q: int, a: int, chi: DirichletCharacter | None = None, *, threads: int = 1
) -> dict[str, float]:
    """Arithmetic-progression analogues of the partial-summation residuals.

    Keys i, ii, iv restrict pi/theta to the class a mod q; key iii (present
    when a character is supplied) checks the chi-twisted reciprocal sum
    against theta(x, chi)/(x log x) + integral of theta(t, chi) times
    (1 + log t)/(t^2 log^2 t). As in the untwisted family, ii uses the
    integrand pi(t)/t and ii_printed reports the circulating variant.
    """
    if x < 10:
        raise ValueError("need x >= 10")
    a %= q
    if math.gcd(a, q) != 1:
        raise NonCoprimeResidueError(f"residue {a} is not coprime to modulus {q}")
    primes = primes_between(2, x + 1, threads=threads)
    sel = primes[primes % q == a]
    logs = np.log(sel)
    pi_x = int(sel.size)
    pi_prefix = np.arange(1, pi_x + 1, dtype=np.float64)
    theta_prefix = np.cumsum(logs)
    theta_x = math.fsum(logs.tolist())
    lx = math.log(x)

    def rel(lhs: float, rhs: float) -> float:
        return abs(lhs - rhs) / max(1.0, abs(lhs))

    res: dict[str, float] = {}
    res["i"] = rel(pi_x, theta_x / lx + _step_integral(sel, theta_prefix, _F_inv_log, x))
    res["ii"] = rel(theta_x, pi_x * lx - _step_integral(sel, pi_prefix, _F_log, x))
    res["ii_printed"] = rel(theta_x, pi_x * lx - _step_integral(sel, pi_prefix, _F_inv_log, x))
    lhs_iv = math.fsum((1.0 / sel.astype(np.float64)).tolist())
    res["iv"] = rel(lhs_iv, pi_x / float(x) + _step_integral(sel, pi_prefix, _F_inv, x))

    if chi is not None:
        table = chi.value_table()
        vals = table[primes % chi.modulus]
        tw_prefix = np.cumsum(vals * np.log(primes))
        tw_x = complex(tw_prefix[-1]) if primes.size else 0j
        lhs_iii = complex(
            math.fsum((vals.real / primes).tolist()),
            math.fsum((vals.imag / primes).tolist()),
        )
        rhs_iii = tw_x / (x * lx) + _step_integral_complex(primes, tw_prefix, _F_inv_tlog, x)
        res["iii"] = abs(lhs_iii - rhs_iii) / max(1.0, abs(lhs_iii))
    return res


def pnt_error_scan(
    limit: int, *, small_x_threshold: int = 100, threads: int = 1
) -> VerificationReport:
    """Ratio scan of the classical error terms against the 1/(8 pi) shape.

    For every integer x in [2, limit] this forms
      |psi(x) - x| / (sqrt(x) log^2 x),
      |theta(x) - x| / (sqrt(x) log^2 x),
      |pi(x) - li(x)| / (sqrt(x) log x)  (li offset from 2),
    reports each variant's max over x >= small_x_threshold and its
    empirical crossover (least x0 with the ratio below 1/(8 pi) from x0 on),
    and counts sign changes of psi(x) - x together with windows [x, 2.02x]
    that contain none (data only). Failures flag psi-ratio breaches at
    x >= small_x_threshold.
    """
    t0 = time.perf_counter()
    if limit < 100:
        raise ValueError("need limit >= 100")
    logs = np.zeros(limit + 1, dtype=np.float64)
    flags = np.zeros(limit + 1, dtype=bool)
    for seg in iter_prime_segments(2, limit + 1, threads=threads):
        flags[seg] = True
        logs[seg] = np.log(seg)
    psi_w = logs.copy()
    k = 2
    while True:
        r = integer_kth_root(limit, k)
        if r < 2:
            break
        for p in primes_between(2, r + 1, threads=threads).tolist():
            psi_w[p**k] += math.log(p)
        k += 1
    pi_pre = np.cumsum(flags.astype(np.int64))
    theta_pre = np.cumsum(logs)
    psi_pre = np.cumsum(psi_w)

    xs = np.arange(2, limit + 1, dtype=np.float64)
    lg = np.log(xs)
    denom2 = np.sqrt(xs) * lg * lg
    denom1 = np.sqrt(xs) * lg
    r_psi = np.abs(psi_pre[2:] - xs) / denom2
    r_theta = np.abs(theta_pre[2:] - xs) / denom2
    r_pi = np.abs(pi_pre[2:] - _li_offset_grid(xs)) / denom1

    def variant(r: np.ndarray) -> dict:
        above = np.nonzero(r >= EIGHT_PI_INV)[0]
        crossover = int(xs[above[-1]] + 1) if above.size else 2
        tail = r[xs >= small_x_threshold]
        i = int(np.argmax(tail))
        return {
            "max_ratio_overall": float(r.max()),
            "max_ratio_above_threshold": float(tail.max()),
            "argmax_above_threshold": int(small_x_threshold + i),
            "crossover_x": crossover,
        }

    d = psi_pre[2:] - xs
    sgn = np.sign(d)
    change_idx = np.nonzero(sgn[1:] != sgn[:-1])[0]
    change_xs = xs[change_idx + 1]
    win_lo = np.arange(2, int(limit / 2.02) + 1, dtype=np.float64)
    lo_i = np.searchsorted(change_xs, win_lo, side="left")
    hi_i = np.searchsorted(change_xs, 2.02 * win_lo, side="right")
    empty = win_lo[lo_i >= hi_i]

    psi_bad = xs[(r_psi >= EIGHT_PI_INV) & (xs >= small_x_threshold)]
    failures = [{"x": int(x), "variant": "psi"} for x in psi_bad[:50]]
    v_psi = variant(r_psi)
    return VerificationReport(
        theorem_id="pnt-error-ratios",
        range=(2, limit),
        samples=int(limit - 1),
        failures=failures,
        extremal={
            "x": v_psi["argmax_above_threshold"],
            "margin": v_psi["max_ratio_above_threshold"],
        },
        runtime=time.perf_counter() - t0,
        details={
            "reference": EIGHT_PI_INV,
            "psi": v_psi,
            "theta": variant(r_theta),
            "pi_li": variant(r_pi),
            "sign_changes_of_psi_minus_x": int(change_idx.size),
            "windows_without_sign_change": int(empty.size),
            "first_empty_windows": [float(w) for w in empty[:5]],
            "small_x_threshold": small_x_threshold,
        },
    )
