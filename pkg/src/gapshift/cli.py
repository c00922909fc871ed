"""Command-line entry point: ``gapshift <subcommand> ...``.

Series are written as CSV and structured reports as JSON. Every randomized
path takes ``--seed``. ``GAPSHIFT_THREADS`` sets how many worker threads
``verify`` may use (default 1); output order never depends on it.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import checks
from .core import ShiftParams, decompose, format_fraction, format_word, parse_word
from .enumeration import (bicolored_rate_bound, count_automaton, count_series, entropy_estimate,
                          log_int)
from .language import is_admissible
from .measures import BernoulliMeasure, empirical_block_entropy, sample_path
from .mixing import minimal_mixing_gap
from .pressure import (Potential, PreconditionError, equilibrium_states_report, partition_series,
                       thresholds)


def _params(args) -> ShiftParams:
    return ShiftParams.make(args.nu, args.tau, args.colors)


def _add_params(p, nu=2, tau="1", colors=2):
    p.add_argument("--nu", type=int, default=nu, help="symbols per colour (>= 2)")
    p.add_argument("--tau", default=tau, help="gap factor as a rational, e.g. 3/2")
    p.add_argument("--colors", type=int, default=colors, help="number of colours L")


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, default=_json_default) + "\n")


def _json_default(o):
    if isinstance(o, Fraction):
        return format_fraction(o)
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def _csv_writer():
    return csv.writer(sys.stdout, lineterminator="\n")


def cmd_check(args) -> int:
    params = _params(args)
    for line in sys.stdin:
        word = parse_word(line)
        ok = is_admissible(word, params)
        if args.decompose or args.format == "json":
            _emit_json({"word": format_word(word), "admissible": ok,
                        "segments": decompose(word, params).to_list()})
        else:
            sys.stdout.write(("true" if ok else "false") + "\n")
    return 0


def cmd_count(args) -> int:
    params = _params(args)
    series = count_series(args.max_n, params)
    bound = bicolored_rate_bound(params)
    if args.stratify:
        rows = []
        for n in range(args.max_n + 1):
            for (ell, k), c in sorted(count_automaton(n, params, stratify=True).items()):
                rows.append({"n": n, "ell": ell, "k": k, "count": str(c)})
        if args.format == "json":
            _emit_json({"params": params.to_dict(), "strata": rows})
        else:
            w = _csv_writer()
            w.writerow(["n", "ell", "k", "count"])
            for r in rows:
                w.writerow([r["n"], r["ell"], r["k"], r["count"]])
        return 0
    rows = []
    for n in range(args.max_n + 1):
        c = series.total[n]
        rate = float(log_int(c) / n) if n else float("nan")
        rows.append({"n": n, "count": str(c), "bicolored": str(series.multi[n]),
                     "rate": rate, "bound": bound})
    if args.format == "json":
        _emit_json({"params": params.to_dict(),
                    "rows": [{**r, "rate": None if r["n"] == 0 else r["rate"]} for r in rows]})
    else:
        w = _csv_writer()
        w.writerow(["n", "count", "bicolored", "rate", "bound"])
        for r in rows:
            w.writerow([r["n"], r["count"], r["bicolored"],
                        "" if r["n"] == 0 else f"{r['rate']:.12g}", f"{bound:.12g}"])
    return 0


def cmd_entropy(args) -> int:
    params = _params(args)
    ns = list(range(args.step, args.max_n + 1, args.step))
    series = count_series(args.max_n, params)
    ests = [entropy_estimate(n, params, count=series.total[n]) for n in ns]
    if args.format == "json":
        _emit_json({"params": params.to_dict(), "series": [e.as_dict() for e in ests]})
    else:
        w = _csv_writer()
        w.writerow(["n", "rate", "lower_bound", "bicolored_rate_bound", "entropy_bound"])
        for e in ests:
            w.writerow([e.n, f"{e.rate:.12g}", f"{e.lower_bound:.12g}",
                        f"{e.upper_bound_expression:.12g}", f"{e.entropy_bound:.12g}"])
    return 0


def cmd_mixing_gap(args) -> int:
    params = _params(args)
    res = minimal_mixing_gap(parse_word(args.eta), parse_word(args.omega), params,
                             horizon=args.horizon)
    _emit_json(res.as_dict())
    return 0 if res.within_bound else 1


def cmd_sample(args) -> int:
    params = _params(args)
    word = sample_path(BernoulliMeasure(params, args.color), args.length, args.seed)
    if args.format == "json":
        out = {"word": format_word(word)}
        if args.stats:
            out["stats"] = _stats(word, args.stats, params)
        _emit_json(out)
        return 0
    sys.stdout.write(format_word(word) + "\n")
    if args.stats:
        _emit_json(_stats(word, args.stats, params))
    return 0


def _stats(word, k, params) -> dict:
    return {"k": k, "block_entropy": empirical_block_entropy(word, k),
            "log_nu": math.log(params.nu), "admissible": is_admissible(word, params)}


def cmd_pressure(args) -> int:
    params = _params(args)
    f = Potential.load(args.potential, nu=params.nu)
    if args.equilibrium:
        try:
            rep = equilibrium_states_report(f, params, infinite=args.infinite)
        except PreconditionError as exc:
            sys.stderr.write(f"precondition failed: {exc}\n")
            return 1
        _emit_json(rep.as_dict())
        return 0
    reports = partition_series(args.max_n, f, params)
    picked = [r for r in reports if r.n % args.step == 0 or r.n == args.max_n]
    if args.format == "json":
        _emit_json({"params": params.to_dict(), "series": [r.as_dict() for r in picked]})
        return 0
    w = _csv_writer()
    w.writerow(["n", "rate", "star_rate", "single_rate", "multi_rate", "base_pressure",
                "tau_star", "tau_ok", "margin_ok"])
    for r in picked:
        w.writerow([r.n, f"{r.rate:.12g}", f"{r.log_Z_star / r.n:.12g}",
                    f"{r.log_Z_single / r.n:.12g}", f"{r.multi_rate:.12g}",
                    f"{r.base_pressure:.12g}", format_fraction(r.tau_star),
                    str(r.tau_ok).lower(), str(r.margin_ok).lower()])
    return 0


def cmd_thresholds(args) -> int:
    f = Potential.load(args.potential, nu=args.nu) if args.potential else None
    t = thresholds(args.nu, f)
    out = {}
    for key, val in t.items():
        if isinstance(val, Fraction):
            out[key] = {"rational": format_fraction(val), "decimal": float(val)}
        elif val is None:
            out[key] = None
        else:
            out[key] = val
    if args.format == "json":
        _emit_json({"nu": args.nu, "thresholds": out})
    else:
        for key, val in out.items():
            if isinstance(val, dict):
                sys.stdout.write(f"{key} = {val['rational']} ({val['decimal']:.6f})\n")
            elif val is None:
                sys.stdout.write(f"{key} = undefined\n")
            else:
                sys.stdout.write(f"{key} = {val:.6f}\n")
    return 0


def cmd_verify(args) -> int:
    selected = checks.CHECKS
    if args.only:
        ids = {int(x) for x in args.only.split(",")}
        selected = [fn for i, fn in enumerate(checks.CHECKS, 1) if i in ids]
    threads = max(1, int(os.environ.get("GAPSHIFT_THREADS", "1")))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(checks.run_check, selected))
    # timings go to stderr so stdout stays reproducible
    if args.format == "json":
        _emit_json({"passed": all(r.passed for r in results),
                    "checks": [r.as_dict(timing=False) for r in results]})
    else:
        for r in results:
            sys.stdout.write(r.line(timing=False) + "\n")
    for r in results:
        sys.stderr.write(f"check {r.id}: {r.seconds:.1f}s\n")
    failed = [r for r in results if not r.passed]
    if failed:
        sys.stderr.write(f"first failing check: {failed[0].id} {failed[0].name}\n")
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gapshift", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=fn)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        return p

    p = add("check", cmd_check, "admissibility of words read from stdin, one per line")
    _add_params(p)
    p.add_argument("--decompose", action="store_true", help="emit JSON with the block decomposition")

    p = add("count", cmd_count, "exact word counts by length")
    _add_params(p)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--stratify", action="store_true", help="split counts by (coloured symbols, blocks)")

    p = add("entropy", cmd_entropy, "growth-rate series log|W_n|/n")
    _add_params(p)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--step", type=int, default=50)

    p = add("mixing-gap", cmd_mixing_gap, "minimal mixing gap between two cylinders")
    _add_params(p)
    p.add_argument("--eta", required=True)
    p.add_argument("--omega", required=True)
    p.add_argument("--horizon", type=int, default=None)

    p = add("sample", cmd_sample, "sample a maximal-entropy Bernoulli path")
    _add_params(p)
    p.add_argument("--color", type=int, default=1)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stats", type=int, default=0, metavar="K", help="add k-block entropy")

    p = add("pressure", cmd_pressure, "partition-function pressure series")
    _add_params(p, nu=3, tau="3/2")
    p.add_argument("--potential", required=True, help="JSON potential file")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--step", type=int, default=50)
    p.add_argument("--equilibrium", action="store_true", help="emit the equilibrium-state report")
    p.add_argument("--infinite", action="store_true", help="with --equilibrium: infinite-colour family")

    p = add("thresholds", cmd_thresholds, "gap-factor thresholds")
    p.add_argument("--nu", type=int, required=True)
    p.add_argument("--potential", default=None)

    p = add("verify", cmd_verify, "run the acceptance checks")
    p.add_argument("--only", default=None, help="comma-separated check ids")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError) as exc:
        sys.stderr.write(f"gapshift: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
