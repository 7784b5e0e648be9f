"""Command-line interface: ``lejakit gen | lebesgue | verify | gamma | figure``.

Exit codes: 0 success, 1 a hard bound failed, 2 usage error, 3 inconclusive.
CSV output uses ``,`` separators, ``.`` decimals, LF line endings, a header
row, and 17 significant digits, so identical parameters give identical bytes.
Timings live only in the manifest written next to ``--out`` files.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import asdict

from . import __version__, kernels
from .bounds import (
    FAIL, INCONCLUSIVE, ReportCache, check_disc_suite, check_interval_suite, conjecture_status,
    figure_data, gamma_checks, suite_outcome,
)
from .disc import MAX_K, leja_section
from .interval import project_from_disc
from .lebesgue import report
from .search import SearchConfig

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _json_safe(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def _cfg(args) -> SearchConfig:
    try:
        return SearchConfig(grid_mult=args.grid_mult, refine_brackets=args.refine_brackets,
                            bracket_tol=args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _manifest(args, params: dict, cfg: SearchConfig | None, wall: float, extra=None) -> dict:
    out = {
        "command": args.command,
        "parameters": params,
        "cfg": cfg.to_dict() if cfg else None,
        "version": __version__,
        "backend": kernels.BACKEND,
        "seed": args.seed,
        "wall_time_s": wall,
    }
    if extra:
        out.update(extra)
    return out


def _emit(args, text: str, manifest: dict) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        with open(args.out + ".manifest.json", "w", encoding="utf-8", newline="\n") as fh:
            json.dump(_json_safe(manifest), fh, indent=2, sort_keys=True)
            fh.write("\n")
    else:
        sys.stdout.write(text)


def _table(args, header, rows, params, cfg, wall, extra=None) -> None:
    manifest = _manifest(args, params, cfg, wall, extra)
    if args.format == "json":
        recs = [dict(zip(header, row)) for row in rows]
        body = {"rows": recs}
        if not args.out:
            body["manifest"] = manifest
        text = json.dumps(_json_safe(body), indent=2, sort_keys=True) + "\n"
    else:
        text = _csv(header, rows)
    _emit(args, text, manifest)


# --- commands ---------------------------------------------------------------

def cmd_gen(args) -> int:
    k = args.k
    if not 1 <= k <= MAX_K:
        raise UsageError(f"k must be in [1, {MAX_K}]")
    t0 = time.perf_counter()
    if args.domain == "disc":
        sec = leja_section(k)
        header = ["index", "angle_num", "angle_log2den", "re", "im"]
        rows = [[j, a.num, a.log2den, float(z.real), float(z.imag)]
                for j, (a, z) in enumerate(zip(sec.angles, sec.nodes))]
    else:
        sec = project_from_disc(k)
        header = ["index", "angle_num", "angle_log2den", "x"]
        rows = [[j, a.num, a.log2den, float(x)] for j, (a, x) in enumerate(zip(sec.folded, sec.nodes))]
    _table(args, header, rows, {"domain": args.domain, "k": k}, None, time.perf_counter() - t0)
    return EXIT_OK


REPORT_COLUMNS = ["domain", "k", "lambda_at_next", "lambda2_at_next", "L", "L2",
                  "argmax_angle", "argmax2_angle", "D", "status"]


def cmd_lebesgue(args) -> int:
    kmin, kmax = args.kmin, args.kmax
    if not 1 <= kmin <= kmax:
        raise UsageError("need 1 <= kmin <= kmax")
    cfg = _cfg(args)
    t0 = time.perf_counter()
    reps = [report(args.domain, k, cfg) for k in range(kmin, kmax + 1)]
    rows = [[getattr(r, c) for c in REPORT_COLUMNS] for r in reps]
    timings = {str(r.k): r.seconds for r in reps}
    _table(args, REPORT_COLUMNS, rows, {"domain": args.domain, "kmin": kmin, "kmax": kmax},
           cfg, time.perf_counter() - t0, {"timings_s": timings})
    status = [r.status for r in reps]
    return EXIT_INCONCLUSIVE if any(s != "ok" for s in status) else EXIT_OK


CHECK_COLUMNS = ["suite", "id", "k", "lhs", "rhs", "margin", "status", "severity", "anchor"]


def cmd_verify(args) -> int:
    kmax = args.kmax_opt if args.kmax_opt is not None else args.kmax
    if kmax is None:
        kmax = 64
    if not 2 <= kmax <= 1024:
        raise UsageError("kmax must be in [2, 1024]")
    cfg = _cfg(args)
    cache = ReportCache(cfg)
    t0 = time.perf_counter()
    suites = {}
    if args.suite in ("disc", "all"):
        suites["disc"] = check_disc_suite(kmax, cache=cache, seed=args.seed)
    if args.suite in ("interval", "all"):
        suites["interval"] = check_interval_suite(kmax, cache=cache, seed=args.seed)
    wall = time.perf_counter() - t0
    everything = [c for checks in suites.values() for c in checks]
    outcome = suite_outcome(everything)
    summary = {"outcome": outcome}
    if "interval" in suites:
        summary["conjecture_3k"] = conjecture_status(suites["interval"])
    manifest = _manifest(args, {"suite": args.suite, "kmax": kmax}, cfg, wall, summary)
    if args.format == "csv":
        rows = [[name, c.id, c.k, c.lhs, c.rhs, c.margin, c.status, c.severity, c.anchor]
                for name, checks in suites.items() for c in checks]
        text = _csv(CHECK_COLUMNS, rows)
    else:
        body = dict(summary, suites={name: [c.to_dict() for c in checks]
                                     for name, checks in suites.items()})
        if not args.out:
            body["manifest"] = manifest
        text = json.dumps(_json_safe(body), indent=2, sort_keys=True) + "\n"
    _emit(args, text, manifest)
    print(f"verify {args.suite} kmax={kmax}: {outcome}"
          + (f", 3k conjecture {summary['conjecture_3k']}" if "conjecture_3k" in summary else ""),
          file=sys.stderr)
    if outcome == FAIL:
        return EXIT_FAIL
    if outcome == INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_gamma(args) -> int:
    if not 1 <= args.mmax <= 10:
        raise UsageError("mmax must be in [1, 10]")
    t0 = time.perf_counter()
    checks = gamma_checks(args.mmax)
    rows = [[c.aux["m"], c.aux["l"], c.lhs, c.rhs, c.margin] for c in checks]
    _table(args, ["m", "l", "gamma", "bound", "margin"], rows, {"mmax": args.mmax}, None,
           time.perf_counter() - t0)
    return EXIT_FAIL if any(c.status == FAIL for c in checks) else EXIT_OK


def cmd_figure(args) -> int:
    if args.kmax < 3:
        raise UsageError("kmax must be >= 3")
    cfg = _cfg(args)
    t0 = time.perf_counter()
    rows = figure_data(args.kmax, cache=ReportCache(cfg))
    header = ["k", "L_disc", "disc_estimate", "L_interval", "interval_estimate", "status"]
    _table(args, header, [list(asdict(r).values()) for r in rows], {"kmax": args.kmax}, cfg,
           time.perf_counter() - t0)
    return EXIT_INCONCLUSIVE if any(r.status != "ok" for r in rows) else EXIT_OK


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--out", help="output file; a <out>.manifest.json sidecar is written")
    common.add_argument("--seed", type=int, default=0, help="seed for random test points")
    search = argparse.ArgumentParser(add_help=False)
    defaults = SearchConfig()
    search.add_argument("--grid-mult", type=int, default=defaults.grid_mult)
    search.add_argument("--refine-brackets", type=int, default=defaults.refine_brackets)
    search.add_argument("--tol", type=float, default=defaults.bracket_tol,
                        help="bracket width at which golden-section refinement stops")

    parser = argparse.ArgumentParser(prog="lejakit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a disc or interval section")
    p.add_argument("domain", choices=("disc", "interval"))
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_gen, default_format="csv")

    p = sub.add_parser("lebesgue", parents=[common, search], help="Lebesgue reports per k")
    p.add_argument("domain", choices=("disc", "interval"))
    p.add_argument("--kmin", type=int, default=1)
    p.add_argument("--kmax", type=int, required=True)
    p.set_defaults(func=cmd_lebesgue, default_format="csv")

    p = sub.add_parser("verify", parents=[common, search], help="run bound-check suites")
    p.add_argument("suite", choices=("disc", "interval", "all"))
    p.add_argument("kmax", type=int, nargs="?")
    p.add_argument("--kmax", dest="kmax_opt", type=int)
    p.set_defaults(func=cmd_verify, default_format="json")

    p = sub.add_parser("gamma", parents=[common], help="gamma_{m,l} table with bounds")
    p.add_argument("mmax", type=int, nargs="?", default=10)
    p.set_defaults(func=cmd_gamma, default_format="csv")

    p = sub.add_parser("figure", parents=[common, search], help="Lebesgue constant series")
    p.add_argument("kmax", type=int, nargs="?", default=129)
    p.set_defaults(func=cmd_figure, default_format="csv")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if args.format is None:
        args.format = args.default_format
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"lejakit {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
