"""Command-line interface: ``haarwords <subcommand> [options]``.

Exit status is 0 on success, 1 when a computation fails (budget exceeded or a
failed check) and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from . import acceptance, bounds, engel, moments
from .characters import character_table
from .engine import DEFAULT_BUDGET, default_workers
from .errors import BudgetError
from .montecarlo import empirical_moment, gaussian_limit_moment
from .weingarten import weingarten_table
from .words import WordSyntaxError, format_word, parse_word

MIN_BUDGET = 10**4
THREADS_ENV = "HAARWORDS_THREADS"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    budget: int = DEFAULT_BUDGET
    threads: int = 1
    fmt: str = "json"
    seed: int = 0
    verbose: int = 0

    def __post_init__(self):
        if self.budget < MIN_BUDGET:
            raise UsageError(f"--budget must be at least {MIN_BUDGET}")
        if self.threads < 1:
            raise UsageError("--threads must be positive")


def exact(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _emit(obj, out) -> None:
    out.write(json.dumps(obj) + "\n")


def _csv(rows, header, out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def _mc_statistic(rep: moments.Rep, order: int) -> str:
    parts = ",".join(map(str, rep.partition))
    if order == 1:
        return f"schur:[{parts}]"
    if rep.kind == "wedge":
        return f"cm2:{rep.m}"
    if rep.kind == "sym":
        return f"sym2:{rep.m}"
    return f"schur2:[{parts}]"


def cmd_moment(args, cfg: RunConfig, out) -> int:
    w = parse_word(args.word)
    rep = moments.parse_rep(args.rep)
    req = moments.MomentRequest(w, rep, args.dim, args.order, args.method)
    result = {"word": format_word(w), "rep": str(rep), "d": args.dim, "order": args.order}
    if args.method in ("exact", "both"):
        t0 = time.perf_counter()
        value = moments.moment(req, cfg.budget, cfg.threads)
        result["value"] = exact(value)
        result["terms"] = moments.moment_term_count(w, rep, args.dim, args.order)
        result["elapsed_ms"] = round((time.perf_counter() - t0) * 1e3, 3)
        if rep.kind == "wedge" and args.order == 1:
            result["c_m"] = exact((-1) ** rep.m * value)
    if args.method in ("mc", "both"):
        est = empirical_moment(w, _mc_statistic(rep, args.order), args.dim, args.samples, cfg.seed)
        result["mc"] = est.to_json()
        if "value" in result:
            result["mc"]["within_5se"] = est.agrees(Fraction(result["value"]))
    if cfg.fmt == "plain":
        out.write(" ".join(f"{k}={v}" for k, v in result.items()) + "\n")
    elif cfg.fmt == "csv":
        flat = {k: v for k, v in result.items() if k != "mc"}
        if "mc" in result:
            flat.update(mc_mean_re=result["mc"]["mean"][0], mc_mean_im=result["mc"]["mean"][1], mc_stderr=result["mc"]["stderr"])
        _csv([list(flat.values())], list(flat), out)
    else:
        _emit(result, out)
    return 0


def cmd_mc(args, cfg: RunConfig, out) -> int:
    w = parse_word(args.word)
    est = empirical_moment(w, args.stat, args.dim, args.samples, cfg.seed)
    if cfg.fmt == "plain":
        out.write(f"mean={est.mean.real:.6g}{est.mean.imag:+.6g}i stderr={est.stderr:.3g} n={est.n}\n")
    elif cfg.fmt == "csv":
        _csv([[est.mean.real, est.mean.imag, est.stderr, est.n, est.seed]], ["mean_re", "mean_im", "stderr", "n", "seed"], out)
    else:
        _emit(est.to_json(), out)
    return 0


def cmd_wg(args, cfg: RunConfig, out) -> int:
    table = weingarten_table(args.n, args.dim)
    if cfg.fmt == "csv":
        _csv([[json.dumps(list(mu)).replace(" ", ""), exact(v)] for mu, v in table.values.items()], ["cycle_type", "value"], out)
    elif cfg.fmt == "plain":
        for mu, v in table.values.items():
            out.write(f"{list(mu)} {exact(v)}\n")
    else:
        _emit(table.to_json(), out)
    return 0


def cmd_engel(args, cfg: RunConfig, out) -> int:
    t0 = time.perf_counter()
    value = engel.engel_direct(args.m, args.dim, convention=args.convention, budget=cfg.budget)
    result = {
        "m": args.m,
        "d": args.dim,
        "trace_wedge": exact(value),
        "c_m": exact((-1) ** args.m * value),
        "bound": str(2 ** (17 * args.m)),
        "bound_applicable": args.dim >= 2 * args.m,
        "below_bound": abs(value) < 2 ** (17 * args.m),
    }
    if args.count_z:
        result["z_count"] = engel.count_Z(args.m, args.dim, cfg.budget)
        result["z_bound"] = engel.z_bound(args.m, args.dim)
    result["elapsed_ms"] = round((time.perf_counter() - t0) * 1e3, 3)
    if cfg.fmt == "plain":
        out.write(" ".join(f"{k}={v}" for k, v in result.items()) + "\n")
    elif cfg.fmt == "csv":
        _csv([list(result.values())], list(result), out)
    else:
        _emit(result, out)
    return 0


def cmd_limit(args, cfg: RunConfig, out) -> int:
    poly = moments.limit_polynomial(args.m, args.p)
    result = poly.to_json()
    if args.samples:
        est = gaussian_limit_moment(poly, args.samples, cfg.seed)
        result["second_moment_mc"] = est.to_json()
    if cfg.fmt == "plain":
        out.write(poly.format() + "\n")
    elif cfg.fmt == "csv":
        rows = [[json.dumps(list(t.monomial)).replace(" ", ""), str(t.canonical()[0]), t.canonical()[1]] for t in poly.terms]
        _csv(rows, ["monomial", "rational", "sqrt"], out)
    else:
        _emit(result, out)
    return 0


def cmd_chars(args, cfg: RunConfig, out) -> int:
    table = character_table(args.n)
    if cfg.fmt == "json":
        _emit(
            {
                "n": args.n,
                "partitions": [list(p) for p in table.partitions],
                "values": [table.row(lam) for lam in table.partitions],
            },
            out,
        )
    else:
        out.write(table.to_csv())
    return 0


def _bounds_suite(cfg: RunConfig, out) -> bool:
    """CSV verdicts for every bound and inequality in the corpus."""
    rows = []
    ok = True
    for name, w, m, d in acceptance.bound_cells():
        l = len(w)
        report = bounds.bound_report(l, m, d)
        for kind, rep, bound in (("wedge", moments.wedge(m), report.wedge_bound), ("sym", moments.sym(m), report.sym_bound)):
            try:
                v = moments.second_moment(w, rep, d, cfg.budget, cfg.threads)
            except BudgetError as exc:
                rows.append([f"{kind} second moment", name, m, d, "", str(bound), "skipped", str(exc)])
                continue
            verdict = v <= bound
            ok &= verdict
            rows.append([f"{kind} second moment", name, m, d, exact(v), str(bound), "pass" if verdict else "fail", ""])
        rows.append(["epsilon regime", name, m, d, "", str(report.epsilon), "inapplicable", f"needs d >= (25l)^(7l)"])
    for m, d in acceptance.ENGEL_CASES:
        if d >= 2 * m:
            v = (-1) ** m * engel.engel_direct(m, d, budget=cfg.budget)
            verdict = abs(v) < 2 ** (17 * m)
            ok &= verdict
            rows.append(["engel |E c_m|", "[[x,y],y]", m, d, exact(v), str(2 ** (17 * m)), "pass" if verdict else "fail", ""])
    samples = [
        (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), 18),
        (Fraction(1, 4), Fraction(1, 2), Fraction(1, 4), 260),
        (Fraction(1, 4), Fraction(1, 2), Fraction(1, 2), 260),
        (Fraction(1, 4), Fraction(3, 8), Fraction(1, 4), 264),
        (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3), 84),
    ]
    for chk in bounds.entropy_checks(samples):
        label = f"delta={chk.delta} b={chk.b} a={chk.a}"
        verdict = "pass" if chk.holds else ("flagged" if not chk.hypotheses else "fail")
        ok &= chk.holds is not False
        rows.append(["binomial power inequality", label, "", chk.d, "", "", verdict, "" if chk.hypotheses else "hypotheses violated"])
    for x, d in ((Fraction(1, 4), 64), (Fraction(1, 2), 100), (Fraction(1, 8), 200), (Fraction(3, 10), 30)):
        s = bounds.entropy_sandwich(x, d)
        ok &= s.holds
        rows.append(["entropy sandwich", f"x={x}", "", d, "", "", "pass" if s.holds else "fail", ""])
    stirling = bounds.stirling_corpus(200)
    st_ok = all(lo and hi for _, _, lo, hi in stirling)
    ok &= st_ok
    rows.append(["binomial Stirling sandwich", "1<=k<=n/2, n<=200", "", "", "", "", "pass" if st_ok else "fail", f"{len(stirling)} pairs"])
    _csv(rows, ["check", "case", "m", "d", "value", "bound", "verdict", "note"], out)
    return ok


def cmd_check(args, cfg: RunConfig, out) -> int:
    suite = args.suite
    if suite == "bounds":
        return 0 if _bounds_suite(cfg, out) else 1
    if suite == "all":
        numbers = sorted(acceptance.CRITERIA)
    else:
        try:
            numbers = [int(s) for s in suite.split(",")]
        except ValueError:
            raise UsageError(f"unknown suite {suite!r}; use all, bounds or a list like 1,5") from None
        bad = [k for k in numbers if k not in acceptance.CRITERIA]
        if bad:
            raise UsageError(f"unknown criteria {bad}")
    opt = acceptance.Options(budget=cfg.budget, samples=args.samples, seed=cfg.seed or acceptance.Options.seed, workers=cfg.threads)

    def progress(res):
        if cfg.fmt == "json":
            _emit(res.to_json(), out)
        else:
            out.write(res.line() + "\n")
            if cfg.verbose or not res.passed:
                for line in res.details:
                    out.write("    " + line + "\n")
                for line in res.skipped:
                    out.write("    skipped: " + line + "\n")
        out.flush()

    results = acceptance.run_suite(numbers, opt, progress)
    failed = [r.number for r in results if not r.passed]
    if cfg.fmt != "json":
        out.write(f"{len(results) - len(failed)}/{len(results)} criteria passed\n")
    return 1 if failed else 0


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------

def _common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--budget", type=int, default=default, help=f"engine term budget (default {DEFAULT_BUDGET})")
    parser.add_argument("--threads", type=int, default=default, help=f"worker processes (default ${THREADS_ENV} or CPU count)")
    parser.add_argument("--seed", type=int, default=default, help="Monte Carlo seed")
    parser.add_argument("--format", choices=("json", "csv", "plain"), default=default, dest="fmt")
    parser.add_argument("-v", "--verbose", action="count", default=argparse.SUPPRESS if suppress else 0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="haarwords", description="Exact and Monte Carlo moments of word maps on U(d).")
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        _common(p, suppress=True)
        return p

    p = add("moment", "exact (and/or Monte Carlo) moments of rho(w)")
    p.add_argument("--word", required=True, help='word expression, e.g. "[[x,y],y]" or "x^2"')
    p.add_argument("--rep", required=True, help="wedge:M, sym:M or lambda:[...]")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--order", type=int, choices=(1, 2), default=2)
    p.add_argument("--method", choices=("exact", "mc", "both"), default="exact")
    p.add_argument("--samples", type=int, default=100_000)
    p.set_defaults(func=cmd_moment)

    p = add("mc", "empirical moment of a statistic of w over Haar draws")
    p.add_argument("--word", required=True)
    p.add_argument("--stat", required=True, help="cm:M, cm2:M, sym:M, sym2:M, schur:[..], schur2:[..], trpow:[..]")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--samples", type=int, default=100_000)
    p.set_defaults(func=cmd_mc)

    p = add("wg", "Weingarten table Wg_d on S_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.set_defaults(func=cmd_wg)

    p = add("engel", "coordinate pipeline for E tr wedge^m [[X,Y],Y]")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--count-z", action="store_true", help="also count the index set Z")
    p.add_argument("--convention", choices=engel.CONVENTIONS, default="derived")
    p.set_defaults(func=cmd_engel)

    p = add("limit", "Gaussian limit polynomial for wedge^m of a word with primitivity exponent p")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--samples", type=int, default=0, help="also estimate E|P|^2 with this many Gaussian draws")
    p.set_defaults(func=cmd_limit)

    p = add("check", "acceptance suite: all, bounds, or a comma-separated list of criteria")
    p.add_argument("--suite", default="all")
    p.add_argument("--samples", type=int, default=100_000, help="Monte Carlo samples per case")
    p.set_defaults(func=cmd_check)

    p = add("chars", "character table of S_n (CSV by default)")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_chars, default_format="csv")
    return parser


def _config(args) -> RunConfig:
    threads = args.threads
    if threads is None:
        env = os.environ.get(THREADS_ENV)
        threads = int(env) if env else default_workers()
    fmt = args.fmt or getattr(args, "default_format", "json")
    return RunConfig(
        budget=args.budget if args.budget is not None else DEFAULT_BUDGET,
        threads=threads,
        fmt=fmt,
        seed=args.seed if args.seed is not None else 0,
        verbose=args.verbose,
    )


def dispatch(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        return args.func(args, cfg, out)
    except (UsageError, WordSyntaxError) as exc:
        parser.print_usage(sys.stderr)
        print(f"haarwords: error: {exc}", file=sys.stderr)
        return 2
    except BudgetError as exc:
        print(f"haarwords: budget exceeded: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"haarwords: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch())
