"""Command-line front end."""

from __future__ import annotations

import argparse
import csv
import io as _io
import sys

from . import io
from .errors import SchemaError, SwanKinkError, UsageError

COMMANDS = ("profile", "swan-at", "lambda", "disk-check", "vc-report", "tower", "family-min",
            "kink-theorem", "selfcheck")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    ap = _Parser(prog="swankink", description="Exact Swan-conductor profiles of Z/p covers of disks.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--in", dest="inp", help="input JSON (cover, tower or family spec)")
    ap.add_argument("--out", help="output path (default: stdout)")
    ap.add_argument("--r", help="radius as an exact rational, e.g. 3/8")
    ap.add_argument("--precision", type=int, help="working precision in units of v(p)")
    ap.add_argument("--max-extension", type=int, help="cap on e*f for field extensions")
    ap.add_argument("--grid-cap", type=int, default=12, help="profile refinement cap")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--format", choices=("csv", "json"), default=None,
                    help="profile output format (default: csv, or json for a .json --out)")
    ap.add_argument("--mode", choices=("lambda", "diff", "swan"), default=None,
                    help="family-min: which lambda to minimize")
    ap.add_argument("--no-strict", action="store_true",
                    help="family-min diff/swan: skip the residual inseparability check")
    return ap


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            flag = "--in" if n == "inp" else f"--{n}"
            raise UsageError(f"{args.command} needs {flag}")


def _radius(args):
    try:
        return io.parse_rational(args.r)
    except SchemaError as exc:
        raise UsageError(str(exc)) from exc


def _load(args, kind):
    data = io.load_json(args.inp)
    parse = {"cover": io.parse_cover, "tower": io.parse_tower, "family": io.parse_family}[kind]
    return data, parse(data, args.precision, args.max_extension)


def _emit(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(args, obj, schema_name):
    io.validate(obj, io.OUTPUT_SCHEMAS[schema_name])
    _emit(args, io.dumps(obj))


def profile_csv(prof) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "delta", "left_slope", "right_slope", "is_kink"])
    for r, v, left, right, kink in prof.rows():
        w.writerow([io.rational_json(r), io.rational_json(v),
                    "" if left is None else io.rational_json(left),
                    "" if right is None else io.rational_json(right),
                    "true" if kink else "false"])
    return buf.getvalue()


def cmd_profile(args):
    from .profile import build_profile
    _need(args, "inp")
    _, cov = _load(args, "cover")
    prof = build_profile(cov, grid_cap=args.grid_cap, threads=args.threads)
    fmt = args.format or ("json" if (args.out or "").endswith(".json") else "csv")
    if fmt == "json":
        _json(args, prof.to_json(), "profile")
    else:
        _emit(args, profile_csv(prof))


def cmd_swan_at(args):
    from .swan import swan_at
    _need(args, "inp", "r")
    _, cov = _load(args, "cover")
    r = _radius(args)
    try:
        v = swan_at(cov, r)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    out = v.to_json()
    out.update({"r": io.rational_json(r), "leftSlope": io.rational_json(v.left_slope),
                "rightSlope": io.rational_json(v.right_slope)})
    _json(args, out, "swan-value")


def cmd_lambda(args):
    from .families import member_lambda
    from .profile import build_profile, lambda_by_scan
    from .swan import lambda_closed_form
    _need(args, "inp")
    _, cov = _load(args, "cover")
    value, method = member_lambda(cov, grid_cap=args.grid_cap, threads=args.threads)
    out = {"lambda": io.rational_json(value), "method": method, "m": cov.m,
           "closedForm": None, "scan": None}
    if "closed" in method:
        out["closedForm"] = io.rational_json(lambda_closed_form(cov))
    if "scan" in method:
        prof = build_profile(cov, grid_cap=args.grid_cap, threads=args.threads)
        out["scan"] = io.rational_json(lambda_by_scan(prof, cov.m))
    _json(args, out, "lambda")


def cmd_disk_check(args):
    from .profile import build_profile, closed_disk_at
    _need(args, "inp", "r")
    _, cov = _load(args, "cover")
    r = _radius(args)
    prof = build_profile(cov, grid_cap=args.grid_cap, threads=args.threads)
    try:
        rep = closed_disk_at(cov, r, prof)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _json(args, rep.to_json(), "disk-report")


def vc_json(rep):
    out = {"r": io.rational_json(rep["r"])}
    if "skipped" in rep:
        out["skipped"] = rep["skipped"]
        return out
    out.update({"points": rep["points"], "ordInf": rep["ordInf"],
                "ordInfBound": io.rational_json(rep["ordInfBound"]),
                "degree": rep["degree"], "allZero": rep["allZero"]})
    return out


def cmd_vc_report(args):
    from .profile import build_profile, closed_disk_at, vanishing_cycles_report
    _need(args, "inp", "r")
    _, cov = _load(args, "cover")
    r = _radius(args)
    prof = build_profile(cov, grid_cap=args.grid_cap, threads=args.threads)
    try:
        disk = closed_disk_at(cov, r, prof)
        rep = vanishing_cycles_report(cov, r, disk)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _json(args, vc_json(rep), "vc-report")


def cmd_tower(args):
    from .towers import tower_disk_decision
    _need(args, "inp", "r")
    _, tower = _load(args, "tower")
    rep = tower_disk_decision(tower, _radius(args), grid_cap=args.grid_cap, threads=args.threads)
    _json(args, rep.to_json(), "disk-report")


def cmd_family_min(args):
    from .families import family_lambda, lambda_diff_swan
    _need(args, "inp")
    data, fam = _load(args, "family")
    mode = args.mode or data.get("mode", "lambda")
    kw = {"grid_cap": args.grid_cap}
    if mode == "lambda":
        cert = family_lambda(fam, threads=args.threads, **kw)
    else:
        strict = data.get("strict", True) and not args.no_strict
        cert = lambda_diff_swan(fam, mode, strict=strict, threads=args.threads, **kw)
    _json(args, cert.to_json(), "certificate")


def verdict_json(v):
    od = v["openDisk"]
    return {"certificate": v["certificate"].to_json(),
            "witnesses": [{"r": io.rational_json(r), "member": m, "lambda": io.rational_json(lam)}
                          for r, m, lam in v["witnesses"]],
            "openDisk": None if od is None else {"radius": io.rational_json(od["radius"]),
                                                  "members": od["members"],
                                                  "gridSize": od["gridSize"]}}


def cmd_kink_theorem(args):
    from .families import kink_theorem_check
    _need(args, "inp")
    data, fam = _load(args, "family")
    v = kink_theorem_check(fam, io.parse_witnesses(data), threads=args.threads,
                           grid_cap=args.grid_cap)
    _json(args, verdict_json(v), "kink-verdict")


def cmd_selfcheck(args):
    from .selfcheck import run_selfcheck
    results = run_selfcheck()
    _emit(args, io.dumps(results))
    if not all(r["ok"] for r in results["checks"]):
        raise SwanKinkError("selfcheck failed")


DISPATCH = {
    "profile": cmd_profile, "swan-at": cmd_swan_at, "lambda": cmd_lambda,
    "disk-check": cmd_disk_check, "vc-report": cmd_vc_report, "tower": cmd_tower,
    "family-min": cmd_family_min, "kink-theorem": cmd_kink_theorem, "selfcheck": cmd_selfcheck,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.threads < 1 or args.grid_cap < 0:
            raise UsageError("--threads must be >= 1 and --grid-cap >= 0")
        DISPATCH[args.command](args)
        return 0
    except SwanKinkError as exc:
        print(f"swankink: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, KeyError) as exc:
        print(f"swankink: {exc}", file=sys.stderr)
        return UsageError.exit_code


if __name__ == "__main__":
    sys.exit(main())
