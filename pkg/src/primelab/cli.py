"""Command-line interface: every library layer as a subcommand.

Exit codes: 0 success, 1 a verification report contains failures, 2 usage
or domain error. Output formats: table (human), csv (RFC-4180, no
timestamp), json (stable key order). The timestamp line/field is
suppressible with --no-timestamp so byte-identical reruns are possible;
CSV output never carries one. All numeric output uses '.' as the decimal
separator regardless of locale (formatting goes through repr/format, never
locale-aware printf).
"""

from __future__ import annotations

import argparse
import csv as _csv
import io
import json
import math
import os
import sys
from dataclasses import asdict, is_dataclass
from datetime import datetime, timezone

from . import explicit as _explicit
from . import lfunc as _lfunc
from . import progressions as _prog
from . import verify as _verify
from . import zeta as _zeta
from .characters import character_group, export_character_table, gauss_sum
from .config import SIEVE_CAP_ENV
from .errors import PoleError, ZeroBankFormatError
from .report import VerificationReport
from .sieve import (
    chebyshev_psi,
    chebyshev_theta,
    max_gap_scan,
    nth_prime,
    prime_pi,
)

__all__ = ["main"]


def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(v)
    if isinstance(v, float):
        return repr(float(v))
    if isinstance(v, complex):
        re, im = float(v.real), float(v.imag)
        return f"{re!r}{'+' if im >= 0 else '-'}{abs(im)!r}j"
    if v is None:
        return ""
    return str(v)


def _jsonable(v):
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "item"):
        return v.item()
    return v


def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _emit_rows(rows: list[dict], args) -> None:
    """rows: list of uniform dicts."""
    fmt = args.format
    if fmt == "json":
        payload = {"rows": [_jsonable(r) for r in rows]}
        if not args.no_timestamp:
            payload["generated_at"] = _timestamp()
        print(json.dumps(payload, sort_keys=True, indent=2))
        return
    if fmt == "csv":
        buf = io.StringIO()
        if rows:
            w = _csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
            w.writeheader()
            for r in rows:
                w.writerow({k: _fmt(v) for k, v in r.items()})
        sys.stdout.write(buf.getvalue())
        return
    if not args.no_timestamp:
        print(f"# generated {_timestamp()}")
    if not rows:
        print("(no rows)")
        return
    cols = list(rows[0].keys())
    table = [[_fmt(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(c), *(len(t[i]) for t in table)) for i, c in enumerate(cols)]
    print("  ".join(c.ljust(w) for c, w in zip(cols, widths)))
    for t in table:
        print("  ".join(cell.ljust(w) for cell, w in zip(t, widths)))


def _emit_value(value, args, label: str = "value") -> None:
    if args.format == "json":
        payload = {label: _jsonable(value)}
        if not args.no_timestamp:
            payload["generated_at"] = _timestamp()
        print(json.dumps(payload, sort_keys=True, indent=2))
    elif args.format == "csv":
        print(label)
        print(_fmt(value))
    else:
        if not args.no_timestamp:
            print(f"# generated {_timestamp()}")
        print(_fmt(value))


def _emit_report(report: VerificationReport, args) -> None:
    if args.format == "json":
        payload = report.to_dict()
        if not args.no_timestamp:
            payload["generated_at"] = _timestamp()
        print(json.dumps(payload, sort_keys=True, indent=2))
    elif args.format == "csv":
        sys.stdout.write(report.to_csv())
    else:
        if not args.no_timestamp:
            print(f"# generated {_timestamp()}")
        print(report.summary_line())
        if report.extremal:
            print(f"  extremal: {report.extremal}")
        for f in report.failures[:20]:
            print(f"  FAILURE: {f}")
        if len(report.failures) > 20:
            print(f"  ... and {len(report.failures) - 20} more failures")
        for k, v in report.details.items():
            print(f"  {k}: {v}")


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse complex number from {text!r}")


def _character(q: int, index: int):
    return character_group(q).character(index)


# ---------------------------------------------------------------- handlers


def _cmd_pi(args) -> int:
    _emit_value(prime_pi(args.x, threads=args.threads), args, "pi")
    return 0


def _cmd_theta(args) -> int:
    _emit_value(chebyshev_theta(args.x, threads=args.threads), args, "theta")
    return 0


def _cmd_psi(args) -> int:
    _emit_value(chebyshev_psi(args.x, threads=args.threads), args, "psi")
    return 0


def _cmd_nth_prime(args) -> int:
    _emit_value(nth_prime(args.n), args, "prime")
    return 0


def _cmd_gaps(args) -> int:
    recs = max_gap_scan(args.limit, threads=args.threads)
    _emit_rows([{"p": r.prime, "next_p": r.next_prime, "gap": r.gap} for r in recs], args)
    return 0


def _cmd_zeta(args) -> int:
    if args.method == "euler-maclaurin":
        val = _zeta.zeta_euler_maclaurin(args.s, order=args.order)
    else:
        val = _zeta.zeta_alternating(args.s)
    _emit_value(val, args, "zeta")
    return 0


def _cmd_zeros(args) -> int:
    ts = _zeta.find_zeros(args.t_max)
    if args.save:
        _explicit.ZeroBank.from_ordinates(
            ts, source=f"computed<={args.t_max}", coverage=args.t_max
        ).save(args.save)
    _emit_rows([{"n": i + 1, "t": f"{t:.12f}"} for i, t in enumerate(ts.tolist())], args)
    return 0


def _cmd_gram(args) -> int:
    rows = [{"n": n, "g_n": _zeta.gram_point(n)} for n in range(args.n, args.n + args.count)]
    _emit_rows(rows, args)
    return 0


def _cmd_chars(args) -> int:
    tab = export_character_table(args.q, include_values=not args.no_values)
    if args.format == "json":
        payload = _jsonable(tab)
        if not args.no_timestamp:
            payload["generated_at"] = _timestamp()
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        rows = [
            {k: v for k, v in entry.items() if k != "values"}
            for entry in tab["characters"]
        ]
        _emit_rows(rows, args)
    return 0


def _cmd_gauss(args) -> int:
    chi = _character(args.q, args.index)
    tau = gauss_sum(chi, args.a)
    _emit_rows(
        [{"q": args.q, "index": args.index, "a": args.a, "tau": tau,
          "abs_tau": abs(tau), "sqrt_q": math.sqrt(args.q)}],
        args,
    )
    return 0


def _cmd_lfunc(args) -> int:
    chi = _character(args.q, args.index)
    if args.special is not None:
        val = _lfunc.l_special_value(args.special, chi)
        _emit_rows(
            [{"q": args.q, "index": args.index, "point": 1 - args.special, "value": val}],
            args,
        )
        return 0
    lv = _lfunc.l_value(args.s, chi, order=args.order)
    _emit_rows(
        [{"q": lv.modulus, "index": lv.index, "s": lv.s, "value": lv.value,
          "est_error": lv.est_error, "method": lv.method}],
        args,
    )
    return 0


def _cmd_ap_count(args) -> int:
    snap = _prog.count_ap(args.x, args.q, args.a, threads=args.threads)
    _emit_rows([asdict(snap)], args)
    return 0


def _cmd_twist(args) -> int:
    chi = _character(args.q, args.index)
    tv = _prog.twist(args.x, chi, threads=args.threads)
    _emit_rows(
        [{"x": tv.x, "q": tv.chi_id[0], "index": tv.chi_id[1],
          "theta_twist": tv.theta_twist, "psi_twist": tv.psi_twist}],
        args,
    )
    return 0


def _cmd_explicit(args) -> int:
    bank = _explicit.load_zeros(args.bank)
    if not args.grid and args.x is None:
        raise ValueError("pass --x for a single evaluation or --grid for a scan")
    if args.grid:
        xs = [float(t) for t in args.grid.split(",")]
        rows = [
            {"x": r.x, "T": r.T, "psi_explicit": r.psi_estimate, "psi_sieve": r.sieve_psi,
             "residual": r.residual, "bound": r.envelope_bound}
            for r in _explicit.residual_scan(xs, args.T, bank, threads=args.threads)
        ]
        _emit_rows(rows, args)
    else:
        _emit_value(_explicit.psi_explicit(args.x, args.T, bank), args, "psi_explicit")
    return 0


def _cmd_li(args) -> int:
    _emit_value(_explicit.li(args.x, args.variant), args, "li")
    return 0


def _verify_bertrand(args) -> VerificationReport:
    return _verify.verify_bertrand(args.limit, threads=args.threads)


def _collect_samples(args) -> list[int]:
    xs: list[int] = []
    if args.x:
        xs.extend(args.x)
    if args.sample:
        lo, hi, n = args.sample
        xs.extend(_verify.sample_points(int(lo), int(hi), int(n), seed=args.seed))
    if args.dense:
        lo, hi = args.dense
        xs.extend(range(int(lo), int(hi) + 1))
    if not xs:
        raise argparse.ArgumentTypeError("no samples: pass --x, --sample, or --dense")
    return xs


def _verify_sqrt_interval(args) -> VerificationReport:
    return _verify.verify_short_interval_sqrt(
        _collect_samples(args), args.epsilon, small_x_threshold=args.small_x_threshold,
        threads=args.threads, seed=args.seed,
    )


def _verify_power_interval(args) -> VerificationReport:
    return _verify.verify_short_interval_power(
        _collect_samples(args), args.epsilon, small_x_threshold=args.small_x_threshold,
        threads=args.threads, seed=args.seed,
    )


def _verify_ap_bertrand(args) -> VerificationReport:
    xs = args.x or [10**3, 10**4, 10**5, 10**6]
    return _prog.verify_ap_bertrand(
        xs, args.A, small_x_threshold=args.small_x_threshold, threads=args.threads
    )


def _verify_pnt(args) -> VerificationReport:
    return _verify.pnt_error_scan(
        args.limit, small_x_threshold=args.small_x_threshold, threads=args.threads
    )


def _cmd_verify(args) -> int:
    # --x is repeatable for the sampling scans; point checks take the last one
    def one_x(default: int) -> int:
        return args.x[-1] if args.x else default

    if args.check == "mertens":
        x = one_x(10**6)
        s, b = _verify.mertens_estimate(x, threads=args.threads)
        _emit_rows([{"x": x, "prime_reciprocal_sum": s, "B_estimate": b}], args)
        return 0
    if args.check == "identities":
        res = _verify.partial_summation_identities(one_x(10**4), threads=args.threads)
        _emit_rows([{"identity": k, "relative_residual": v} for k, v in res.items()], args)
        return 0
    if args.check == "ap-identities":
        chi = _character(args.q, args.index) if args.index is not None else None
        res = _verify.ap_partial_summation_identities(
            one_x(10**4), args.q, args.a, chi, threads=args.threads
        )
        _emit_rows([{"identity": k, "relative_residual": v} for k, v in res.items()], args)
        return 0
    if args.check == "theta-margins":
        x = one_x(10**6)
        lo, up = _verify.short_interval_theta_margins(x, args.y, threads=args.threads)
        _emit_rows([{"x": x, "y": args.y, "lower_margin": lo, "upper_margin": up}], args)
        return 0
    report = {
        "bertrand": _verify_bertrand,
        "sqrt-interval": _verify_sqrt_interval,
        "power-interval": _verify_power_interval,
        "ap-bertrand": _verify_ap_bertrand,
        "pnt": _verify_pnt,
    }[args.check](args)
    _emit_report(report, args)
    return 0 if report.passed else 1


# ---------------------------------------------------------------- parser


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.add_argument("--threads", type=int, default=1, help="sieve worker threads")
    p.add_argument("--seed", type=lambda t: int(t, 0), default=0x5EED,
                   help="RNG seed for sampled scans")
    p.add_argument("--no-timestamp", action="store_true",
                   help="suppress the generated-at line/field")
    p.add_argument("--sieve-cap", type=int, default=None,
                   help=f"override the sieve cap (also via {SIEVE_CAP_ENV})")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="primelab",
        description="prime counting, zeta/L-functions, and verification scans",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def cmd(name: str, fn, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=fn)
        _add_common(p)
        return p

    p = cmd("pi", _cmd_pi, "prime count up to x")
    p.add_argument("x", type=int)
    p = cmd("theta", _cmd_theta, "Chebyshev theta(x), sum of log p")
    p.add_argument("x", type=int)
    p = cmd("psi", _cmd_psi, "Chebyshev psi(x), sum of von Mangoldt weights")
    p.add_argument("x", type=int)
    p = cmd("nth-prime", _cmd_nth_prime, "the n-th prime (1-indexed)")
    p.add_argument("n", type=int)
    p = cmd("gaps", _cmd_gaps, "record prime gaps up to limit")
    p.add_argument("limit", type=int)

    p = cmd("zeta", _cmd_zeta, "zeta(s) by alternating or Euler-Maclaurin summation")
    p.add_argument("--s", type=_parse_complex, required=True)
    p.add_argument("--method", choices=("alternating", "euler-maclaurin"),
                   default="alternating")
    p.add_argument("--order", type=int, default=12, help="Euler-Maclaurin order")

    p = cmd("zeros", _cmd_zeros, "critical-line zero ordinates up to t-max")
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--save", default=None, help="also write a zero-bank file")

    p = cmd("gram", _cmd_gram, "Gram points g_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=1)

    p = cmd("chars", _cmd_chars, "Dirichlet character table mod q")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--no-values", action="store_true")

    p = cmd("gauss", _cmd_gauss, "Gauss sum of a character")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--a", type=int, default=1)

    p = cmd("lfunc", _cmd_lfunc, "Dirichlet L-function values")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--s", type=_parse_complex, default=complex(2.0))
    p.add_argument("--order", type=int, default=12)
    p.add_argument("--special", type=int, default=None,
                   help="n >= 1: exact L(1-n, chi) instead of l_value")

    p = cmd("ap-count", _cmd_ap_count, "pi/theta/psi restricted to a residue class")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", type=int, required=True)

    p = cmd("twist", _cmd_twist, "character-twisted theta and psi sums")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--index", type=int, required=True)

    p = cmd("explicit", _cmd_explicit, "truncated explicit formula for psi")
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--bank", default="builtin", help='"builtin" or a zero-bank file')
    p.add_argument("--grid", default=None,
                   help="comma-separated x values: residual scan instead of one value")

    p = cmd("li", _cmd_li, "logarithmic integral")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--variant", choices=("offset_from_2", "principal_value"),
                   default="offset_from_2")

    p = cmd("verify", _cmd_verify, "verification scans; exit 1 on any failure")
    p.add_argument("check", choices=(
        "bertrand", "sqrt-interval", "power-interval", "ap-bertrand", "pnt",
        "mertens", "identities", "ap-identities", "theta-margins"))
    p.add_argument("--limit", type=int, default=10**6)
    p.add_argument("--x", type=int, action="append", default=None,
                   help="explicit sample (repeatable)")
    p.add_argument("--sample", type=float, nargs=3, metavar=("LO", "HI", "N"),
                   default=None, help="log-uniform samples in [LO, HI]")
    p.add_argument("--dense", type=float, nargs=2, metavar=("LO", "HI"), default=None,
                   help="every integer in [LO, HI]")
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--A", type=float, default=1.0, help="modulus exponent for ap-bertrand")
    p.add_argument("--q", type=int, default=4)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--index", type=int, default=None, help="character index for ap-identities")
    p.add_argument("--y", type=int, default=10**4, help="interval length for theta-margins")
    p.add_argument("--small-x-threshold", type=int, default=100,
                   help="failures at or below this x are recorded, not counted")

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    prior_cap = os.environ.get(SIEVE_CAP_ENV)
    if args.sieve_cap is not None:
        os.environ[SIEVE_CAP_ENV] = str(args.sieve_cap)
    try:
        return args.func(args)
    except BrokenPipeError:
        try:
            sys.stdout = open(os.devnull, "w")
        except Exception:
            pass
        return 0
    except (
        ValueError,
        PoleError,
        ZeroBankFormatError,
        OverflowError,
        argparse.ArgumentTypeError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        # the cap override is per-invocation, not a lasting env mutation
        if args.sieve_cap is not None:
            if prior_cap is None:
                os.environ.pop(SIEVE_CAP_ENV, None)
            else:
                os.environ[SIEVE_CAP_ENV] = prior_cap


if __name__ == "__main__":
    sys.exit(main())
