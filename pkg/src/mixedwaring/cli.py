"""Command-line front end.

Exit codes: 0 success, 1 when `represent` finds nothing, 2 for bad flags
or contract violations.  Data goes to stdout (or --out), diagnostics to
stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import builder, circle, counting, scanner, sieve

class UsageError(Exception):
    pass


def _rep_json(rep: builder.MixedRepresentation) -> dict:
    out = {
        "n": rep.n,
        "squares": list(rep.squares),
        "biquadrates": list(rep.biquadrates),
        "positive": rep.positive,
    }
    if rep.provenance is not None:
        pv = rep.provenance
        out.update(case=pv.case_tag, p=pv.p, u=pv.u, v=pv.v, a=pv.a, b=pv.b)
    return out


def scan_json(r: scanner.ScanReport) -> dict:
    return {
        "s": r.s,
        "x": r.X,
        "w": r.W,
        "psi": r.psi.label(),
        "flagged": r.flagged,
        "per_dyadic": [{"lo": lo, "hi": hi, "count": c} for lo, hi, c in r.per_dyadic],
        "residue_breakdown": {str(k): v for k, v in r.residue_breakdown.items()},
        "min_singular_series": r.min_singular_series,
    }


def _csv(header: list[str], rows) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(x) if isinstance(x, float) else x for x in row])
    return buf.getvalue().encode()


def emit(report, fmt: str) -> bytes:
    """Serialize a module report; JSON keys keep insertion order."""
    if isinstance(report, counting.RepCountTable):
        if fmt == "csv":
            return _csv(["n", "count"], ((n, int(report.counts[n])) for n in range(1, report.X + 1)))
        report = {"s": report.s, "x": report.X, "counts": report.counts[1:].tolist()}
    elif isinstance(report, scanner.ScanReport):
        if fmt == "csv":
            rows = (
                (n, R, m, m - R)
                for n, R, m in zip(report.flagged, report.counts, report.mains)
            )
            return _csv(["n", "R", "main", "deficit"], rows)
        report = scan_json(report)
    elif isinstance(report, sieve.SieveReport):
        report = sieve.sieve_report_json(report)
    elif isinstance(report, builder.MixedRepresentation):
        report = _rep_json(report)
    if fmt == "csv":
        if not isinstance(report, dict):
            raise UsageError("csv output not available for this report")
        return _csv(list(report), [list(report.values())])
    if fmt == "text":
        return (_text(report) + "\n").encode()
    return (json.dumps(report, indent=None, separators=(",", ":")) + "\n").encode()


def _text(obj) -> str:
    if not isinstance(obj, dict):
        return str(obj)
    return "\n".join(f"{k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}" for k, v in obj.items())


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--format", choices=("json", "csv", "text"), default=None)
    common.add_argument("--workers", type=int, default=1)

    p = argparse.ArgumentParser(prog="mixedwaring", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="subcommand", required=True)

    r = sub.add_parser("represent", parents=[common], help="two squares plus three biquadrates")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--all", action="store_true", help="one representation per qualifying prime")

    c = sub.add_parser("count", parents=[common], help="R_s(n) by the oracle")
    c.add_argument("--s", type=int, choices=(3, 4), default=3)
    c.add_argument("--n", type=int, required=True)

    t = sub.add_parser("count-table", parents=[common], help="R_s(n) for all n <= X")
    t.add_argument("--s", type=int, choices=(3, 4), default=3)
    t.add_argument("--x-max", type=int, required=True)

    g = sub.add_parser("sing-series", parents=[common], help="truncated singular series")
    g.add_argument("--s", type=int, choices=(3, 4), default=3)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--w", type=int, default=200)

    sc = sub.add_parser("scan", parents=[common], help="exceptional-set scan")
    sc.add_argument("--s", type=int, choices=(3, 4), default=3)
    sc.add_argument("--x-max", type=int, required=True)
    sc.add_argument("--w", type=int, default=200)
    sc.add_argument("--psi", default="log", help="log or pow:<delta>")

    sv = sub.add_parser("sieve", parents=[common], help="sifting counts for N0")
    sv.add_argument("--n", type=int, required=True, help="N0 (16 must not divide it)")
    sv.add_argument("--z", type=float, default=None, help="sifting level (default sqrt(N))")
    sv.add_argument("--d-level", type=int, default=None, help="also report the remainder sum below this level")

    k = sub.add_parser("constants", parents=[common], help="main-term constants")
    k.add_argument("--check", action="store_true")
    return p


def _positive(name: str, value) -> None:
    if value is not None and value < 1:
        raise UsageError(f"--{name} must be positive, got {value}")


def _dispatch(args) -> tuple[object, int, str]:
    cmd = args.subcommand
    _positive("workers", args.workers)
    if args.workers > 64:
        raise UsageError("--workers must be at most 64")
    for name in ("n", "x_max", "w", "d_level"):
        _positive(name.replace("_", "-"), getattr(args, name, None))

    if cmd == "represent":
        adm = builder.admissibility(args.n)
        adm_json = {
            "theorem_ok": adm.theorem_ok,
            "relaxed_ok": adm.relaxed_ok,
            "failed_conditions": list(adm.failed_conditions),
        }
        if args.all:
            reps = builder.find_all_representations(args.n)
            if not reps:
                return {"n": args.n, "result": "none", "admissibility": adm_json}, 1, "json"
            return {"n": args.n, "representations": [_rep_json(x) for x in reps], "admissibility": adm_json}, 0, "json"
        rep = builder.find_representation(args.n)
        if rep is None:
            return {"n": args.n, "result": "none", "admissibility": adm_json}, 1, "json"
        out = _rep_json(rep)
        out["admissibility"] = adm_json
        return out, 0, "json"
    if cmd == "count":
        return {"s": args.s, "n": args.n, "count": counting.rep_count_oracle(args.s, args.n)}, 0, "json"
    if cmd == "count-table":
        return counting.build_table(args.s, args.x_max, workers=args.workers), 0, "csv"
    if cmd == "sing-series":
        ss = circle.singular_series(args.s, args.n, args.w)
        out = {
            "s": args.s,
            "n": args.n,
            "w": args.w,
            "value": ss.value,
            "last_block": ss.last_block,
            "main_term": circle.gamma_main_constant(args.s) * ss.value * args.n ** (args.s / 4),
        }
        return out, 0, "json"
    if cmd == "scan":
        psi = scanner.PsiSpec.parse(args.psi)
        return scanner.scan(args.s, args.x_max, psi, args.w, workers=args.workers), 0, "json"
    if cmd == "sieve":
        case = builder.select_case(args.n)
        if case is None:
            raise UsageError(f"no case applies to N0={args.n}")
        z = args.z if args.z is not None else math.sqrt(case.N)
        report = sieve.sieve_counts(args.n, z)
        out = sieve.sieve_report_json(report)
        if args.d_level is not None:
            eh = sieve.eh_remainder(args.n, args.d_level, z)
            out["eh_remainder"] = {
                "d_level": args.d_level,
                "x": eh.x,
                "value": eh.value,
                "terms": [{"d": d, "rho": r, "max_deviation": dev} for d, r, dev in eh.terms],
            }
        return out, 0, "json"
    if cmd == "constants":
        out = {"c3": circle.C3, "c4": circle.C4}
        for s in (3, 4):
            out[f"gamma_main_constant_{s}"] = circle.gamma_main_constant(s)
            out[f"closed_form_{s}"] = circle.singular_integral_closed_form(s, 1.0)
        if args.check:
            out["checks"] = {
                f"s{s}": abs(out[f"gamma_main_constant_{s}"] - out[f"closed_form_{s}"]) <= 1e-12
                for s in (3, 4)
            }
            out["gamma_3_2_squared_is_pi_over_4"] = abs(math.gamma(1.5) ** 2 - math.pi / 4) <= 1e-12
        return out, 0, "json"
    raise UsageError(f"unknown subcommand {cmd}")


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report, code, default_fmt = _dispatch(args)
        payload = emit(report, args.format or default_fmt)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.out:
            with open(args.out, "wb") as fh:
                fh.write(payload)
        else:
            sys.stdout.buffer.write(payload)
            sys.stdout.flush()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return code


def main() -> None:
    sys.exit(run())
