"""Command-line surface: count, predict, expsum, verify, sweep.

Every run prints a config echo line before its results.  Numeric output is
formatted to 12 significant digits.  Exit codes: 0 success, 1 an asserted
check failed, 2 usage/guard errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from . import __version__
from .errors import GuardError
from .expsums import Frequency, SumKind, classical_sum, damped_sum
from .model import (
    ProblemConfig,
    Theorem,
    Variant,
    admissible_h_range,
    derive_constants,
    main_term,
)
from .repcount import rep_window_total
from .verify import (
    LemmaReport,
    bound_suite,
    circle_identity_check,
    laplace_check,
    mean_square_report,
    parseval_check,
    theta_modular_check,
)
from . import experiments

_KIND_BY_FLAG = {
    "S": SumKind.S, "V": SumKind.V, "T": SumKind.T, "f": SumKind.F,
    "U": SumKind.U, "Stilde": SumKind.STILDE, "Vtilde": SumKind.VTILDE,
    "omega": SumKind.OMEGA,
}


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _echo(command: str, args: argparse.Namespace, keys: list[str]) -> None:
    parts = [f"{k.replace('_', '-')}={getattr(args, k)}" for k in keys]
    print(f"# config: command={command} " + " ".join(parts))


def _resolve_h(args: argparse.Namespace) -> int:
    if args.H is not None:
        return args.H
    return int(float(args.N) ** args.H_exp)


def _print_report(report: LemmaReport) -> None:
    tag = {"pass": "PASS", "fail": "FAIL", "report-only": "INFO"}[report.verdict]
    ratio = "" if math.isnan(report.ratio) else f" ratio={_fmt(report.ratio)}"
    print(f"{tag}  {report.name} observed={_fmt(report.observed)} "
          f"reference={_fmt(report.reference)}{ratio}"
          + (f" tol={_fmt(report.tolerance)}" if report.tolerance else ""))


def _cmd_count(args: argparse.Namespace) -> int:
    H = _resolve_h(args)
    _echo("count", args, ["l1", "l2", "variant", "N", "damped", "threads"])
    print(f"# H={H}")
    cfg = ProblemConfig(args.l1, args.l2, Variant(args.variant), args.N, H,
                        cutoff_a_value=args.A, damped=args.damped)
    observed = rep_window_total(cfg, threads=args.threads)
    predicted = main_term(cfg)
    print(f"window_total={_fmt(observed)}")
    print(f"main_term={_fmt(predicted)}")
    print(f"ratio={_fmt(observed / predicted) if predicted else 'nan'}")
    return 0


def _cmd_predict(args: argparse.Namespace) -> int:
    _echo("predict", args, ["l1", "l2", "N", "epsilon"])
    cst = derive_constants(args.l1, args.l2, args.N)
    print(f"lambda={cst.lam} ({_fmt(float(cst.lam))})")
    print(f"c={_fmt(cst.c_density)}")
    print(f"a={cst.a_param} ({_fmt(float(cst.a_param))})")
    print(f"b={cst.b_param} ({_fmt(float(cst.b_param))})")
    print(f"logN={_fmt(cst.log_n)}")
    eps = Fraction(args.epsilon).limit_denominator(10**9)
    for theorem in Theorem:
        try:
            rng = admissible_h_range(theorem, args.l1, args.l2, args.N, eps)
        except ValueError as exc:
            print(f"{theorem.value}: not applicable ({exc})")
            continue
        kind = "threshold" if rng.lo_is_threshold else "uniform"
        logpow = f" (log N)^{rng.log_power}" if rng.lo_is_threshold else ""
        print(f"{theorem.value}: lo_exponent={rng.lo_exponent}{logpow} "
              f"hi_exponent={rng.hi_exponent} kind={kind} "
              f"nonempty={str(rng.nonempty).lower()} "
              f"H_window=[{_fmt(rng.lower_h(args.kappa))}, {_fmt(rng.upper_h())}]")
    return 0


def _cmd_expsum(args: argparse.Namespace) -> int:
    _echo("expsum", args, ["kind", "l", "alpha", "N"])
    kind = _KIND_BY_FLAG[args.kind]
    freq = Frequency(args.alpha, args.N)
    if kind.damped:
        sample = damped_sum(kind, args.l, freq, tol=args.tol)
        print(f"value={_fmt(sample.value.real)}{sample.value.imag:+.12g}j")
        print(f"truncation_bound={_fmt(sample.truncation_bound)}")
    else:
        sample = classical_sum(kind, args.l, freq, A=args.A, H=args.H)
        print(f"value={_fmt(sample.value.real)}{sample.value.imag:+.12g}j")
    return 0


def _verify_circle(args: argparse.Namespace) -> list[LemmaReport]:
    N = min(args.N, 4000)
    reports = []
    for variant, damped in ((Variant.RPP_FULL, False), (Variant.RP_FULL, False),
                            (Variant.RPP_FULL, True), (Variant.RP_FULL, True)):
        if damped and not variant.prime_power_side and args.l2 != 2:
            continue  # damped integer-power identity needs ell2 = 2
        cfg = ProblemConfig(args.l1, args.l2, variant, N, args.H, damped=damped)
        reports.append(circle_identity_check(cfg))
    return reports


def _verify_suite(args: argparse.Namespace) -> list[LemmaReport]:
    reports: list[LemmaReport] = []
    suite = args.suite
    if suite in ("all", "circle"):
        reports += _verify_circle(args)
    if suite in ("all", "laplace"):
        N = 1000
        ns = [N, 2 * N, 4 * N, 8 * N]
        for mu in (0.5, 5.0 / 6.0, 1.0, 1.5):
            reports.append(laplace_check(N, mu, ns))
    if suite in ("all", "parseval"):
        for ell in (2, 3, 4):
            reports.append(parseval_check(ell, min(args.N, 10**4)))
    if suite in ("all", "theta"):
        reports.append(theta_modular_check(min(args.N, 10**4)))
    if suite in ("all", "bounds"):
        reports += bound_suite(min(args.N, 10**6), samples=args.samples)
    if suite in ("all", "meansquare"):
        N = min(args.N, 10**4)
        reports += mean_square_report(2, N, [1.0 / N, 1e-2, 0.5], H=100)
    return reports


def _cmd_verify(args: argparse.Namespace) -> int:
    _echo("verify", args, ["suite", "N", "l1", "l2", "H", "samples"])
    reports = _verify_suite(args)
    for report in reports:
        _print_report(report)
    failed = [r for r in reports if r.failed]
    print(f"# {len(reports)} checks, {len(failed)} failed")
    if args.out:
        payload = {"reports": [
            {"name": r.name, "observed": r.observed, "reference": r.reference,
             "tolerance": r.tolerance, "ratio": r.ratio, "verdict": r.verdict}
            for r in reports]}
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
        from .figures import reports_figure

        fig_path = os.path.splitext(args.out)[0] + ".png"
        reports_figure(reports, fig_path)
        print(f"# wrote {args.out} and {fig_path}")
    return 1 if failed else 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    with open(args.config, "r", encoding="utf-8") as fh:
        conf = json.load(fh)
    _echo("sweep", args, ["config", "threads"])
    table = experiments.sweep(
        Variant(conf["variant"]),
        [tuple(p) for p in conf["ell_pairs"]],
        conf["N_list"],
        conf["theta_list"],
        epsilon=Fraction(conf.get("epsilon", "1/100")),
        damped=conf.get("damped", False),
        kappa=conf.get("kappa", 1.0),
        threads=args.threads,
    )
    for row in table.rows:
        print(f"ell=({row.ell1},{row.ell2}) N={row.N} theta={_fmt(row.theta)} "
              f"H={row.H} observed={_fmt(row.observed)} "
              f"predicted={_fmt(row.predicted)} ratio={_fmt(row.ratio)} "
              f"in_range={str(row.in_range).lower()}")
    out = args.out or conf.get("out")
    if out:
        fmt = conf.get("format", "csv")
        formats = ("csv", "json") if fmt == "both" else (fmt,)
        stem = os.path.splitext(out)[0]
        for f in formats:
            path = f"{stem}.{f}"
            experiments.emit_report(table, f, path)
            print(f"# wrote {path}")
        if not args.no_figures:
            from .figures import sweep_figure

            sweep_figure(table, f"{stem}.png")
            print(f"# wrote {stem}.png")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ppwin",
        description="Short-interval representation counts for sums of two "
                    "prime powers, and the checks behind them.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    default_threads = int(os.environ.get("PPWIN_THREADS", "1"))

    p = sub.add_parser("count", help="windowed total, main term and ratio")
    p.add_argument("--l1", type=int, required=True)
    p.add_argument("--l2", type=int, required=True)
    p.add_argument("--variant", choices=[v.value for v in Variant], required=True)
    p.add_argument("--N", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--H", type=int)
    g.add_argument("--H-exp", dest="H_exp", type=float)
    p.add_argument("--A", type=float, default=None,
                   help="cutoff A for truncated variants (default A(N, 1))")
    p.add_argument("--damped", action="store_true")
    p.add_argument("--threads", type=int, default=default_threads)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("predict", help="derived constants and H-ranges")
    p.add_argument("--l1", type=int, required=True)
    p.add_argument("--l2", type=int, required=True)
    p.add_argument("--N", type=int, default=10**8)
    p.add_argument("--epsilon", type=str, default="1/100")
    p.add_argument("--kappa", type=float, default=1.0)
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("expsum", help="one generating-function value")
    p.add_argument("--kind", choices=sorted(_KIND_BY_FLAG), required=True)
    p.add_argument("--l", type=int, default=2)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--A", type=float, default=math.inf)
    p.add_argument("--H", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-16)
    p.set_defaults(func=_cmd_expsum)

    p = sub.add_parser("verify", help="run identity/bound check suites")
    p.add_argument("--suite", choices=["all", "circle", "laplace", "parseval",
                                       "theta", "bounds", "meansquare"],
                   default="all")
    p.add_argument("--N", type=int, default=2000)
    p.add_argument("--l1", type=int, default=2)
    p.add_argument("--l2", type=int, default=2)
    p.add_argument("--H", type=int, default=40)
    p.add_argument("--samples", type=int, default=10**5)
    p.add_argument("--out", type=str, default=None,
                   help="write reports JSON (+ figure) here")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sweep", help="asymptotic convergence sweep")
    p.add_argument("--config", type=str, required=True,
                   help="JSON file: variant, ell_pairs, N_list, theta_list, "
                        "epsilon, damped, kappa, out, format")
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--threads", type=int, default=default_threads)
    p.add_argument("--no-figures", dest="no_figures", action="store_true")
    p.set_defaults(func=_cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GuardError, OverflowError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
