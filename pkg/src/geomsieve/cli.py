"""Command-line interface.

Subcommands:

    lattice-check SOURCE        geometric axioms + sign-alternation check
    sieve-run PATH              run a sieve instance from a JSON file
    verify-all                  run the named end-to-end checks
    dowling table               emit a Whitney triangle as CSV
    dowling build               write a Dowling lattice as JSON
    dowling conv                one shifted convolution value
    dowling numbers             Dowling numbers D_{m,r}(0..nmax)
    asym dowling                saddle-point data for D_{m,r}(n)

SOURCE is either a path to a lattice JSON file or a generator name such
as boolean:4, partition:5, dowling:3:2, uniform:2:6, graphic:k4.
Exit codes: 0 all checks passed, 1 a check failed, 2 bad usage or
unparseable input.
"""

import argparse
import json
import os
import sys

import mpmath as mp

from . import dowling, generators, verify
from .brun import verify_brun
from .errors import GeomsieveError, NotGeometric
from .poset import lattice_from_json, lattice_to_json
from .sieve import (
    brun_bounds,
    sieve_error_bound,
    sieve_instance_from_json,
    sieve_main_term,
    sifted_count_exact,
)

__all__ = ["main"]


def _load_lattice(source, cap):
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            data = json.load(fh)
        lat = lattice_from_json(data)
        if lat.n_elems > cap:
            raise GeomsieveError(
                f"lattice has {lat.n_elems} elements, over the cap {cap}")
        return lat
    if ":" in source:
        return generators.parse_named(source, cap)
    raise ValueError(f"{source!r} is neither a file nor a generator name")


def _emit(data, fmt, stream=None):
    stream = stream or sys.stdout
    if fmt == "json":
        json.dump(data, stream, indent=2, sort_keys=True)
        stream.write("\n")
    else:
        for key in sorted(data):
            stream.write(f"{key}: {data[key]}\n")


def cmd_lattice_check(args):
    lat = _load_lattice(args.source, args.cap_elements)
    chk = lat.is_geometric()
    out = {
        "source": args.source,
        "n": lat.n_elems,
        "rank": lat.top_rank,
        "geometric": chk.ok,
        "failure": chk.failure,
        "witness": list(chk.witness) if chk.witness else None,
    }
    if chk.ok:
        report = verify_brun(lat)
        out["whitney_first"] = list(report.whitney_first)
        out["partial_sums"] = list(report.partial_sums)
        out["brun_ok"] = True
    _emit(out, args.format)
    return 0 if chk.ok else 1


def cmd_sieve_run(args):
    with open(args.path, encoding="utf-8") as fh:
        data = json.load(fh)
    inst = sieve_instance_from_json(data, cap_elements=args.cap_elements)
    lat = inst.lattice
    rank_tau = lat.rank[inst.tau]
    cutoff = args.cutoff if args.cutoff is not None else (rank_tau + 1) // 2
    exact = sifted_count_exact(inst)
    main_term = sieve_main_term(inst)
    bound = sieve_error_bound(inst)
    lower, upper = brun_bounds(inst, cutoff)
    residual = exact - main_term
    ok = lower <= exact <= upper
    out = {
        "n": lat.top_rank,
        "rank_tau": rank_tau,
        "sifted_count": exact,
        "main_term": str(main_term),
        "error_bound": str(bound),
        "residual": str(residual),
        "cutoff": cutoff,
        "lower": lower,
        "upper": upper,
        "sandwich_ok": bool(lower <= exact <= upper),
    }
    _emit(out, args.format)
    return 0 if ok else 1


def cmd_verify_all(args):
    results = verify.run_checks(scope=args.scope, fast=args.fast)
    if args.format == "json":
        out = {
            "checks": [
                {"name": r.name, "ok": r.ok, "detail": r.detail,
                 "seconds": round(r.seconds, 3)}
                for r in results
            ],
            "ok": all(r.ok for r in results),
        }
        json.dump(out, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    else:
        for r in results:
            word = "PASS" if r.ok else "FAIL"
            print(f"{word} {r.name}: {r.detail} ({r.seconds:.1f}s)")
        failed = sum(not r.ok for r in results)
        print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if all(r.ok for r in results) else 1


def cmd_dowling_table(args):
    if args.kind == "first":
        if args.r not in (None, 1):
            raise ValueError("the first-kind triangle has no shift; drop --r")
        tri = dowling.whitney_first_table(args.m, args.nmax)
    else:
        tri = dowling.whitney_second_table(args.m,
                                           1 if args.r is None else args.r,
                                           args.nmax)
    text = dowling.triangle_to_csv(tri)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_dowling_build(args):
    size = dowling.dowling_number(args.m, args.n)
    if size > args.cap_elements:
        raise GeomsieveError(
            f"Q_{args.n}(Z_{args.m}) has {size} elements, over the cap "
            f"{args.cap_elements}")
    lat = dowling.build_Qn(args.n, args.m, n_cap=args.n, m_cap=args.m)
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(lattice_to_json(lat), fh)
        fh.write("\n")
    print(f"wrote {lat.n_elems} elements to {args.out}")
    return 0


def cmd_dowling_conv(args):
    value = dowling.shifted_convolution(args.m, args.n, args.t, args.s)
    series = dowling.conv_series(args.m, args.n, args.t, args.s)
    via_series = series.coefficient(args.s)
    if args.t >= args.n:
        via_table = dowling.whitney_second_table(
            args.m, 1 + args.m * args.n, args.s).value(args.s,
                                                       args.t - args.n)
    else:
        via_table = 0
    out = {
        "m": args.m, "n": args.n, "t": args.t, "s": args.s,
        "value": value,
        "via_series": via_series,
        "via_shifted_triangle": via_table,
        "agree": value == via_series == via_table,
    }
    _emit(out, args.format)
    return 0 if out["agree"] else 1


def cmd_dowling_numbers(args):
    r = 1 if args.r is None else args.r
    values = [dowling.r_dowling_number(args.m, r, n)
              for n in range(args.nmax + 1)]
    if args.format == "csv":
        sys.stdout.write("n,value\n")
        for n, v in enumerate(values):
            sys.stdout.write(f"{n},{v}\n")
    else:
        _emit({"m": args.m, "r": r,
               "values": values}, "json")
    return 0


def cmd_asym_dowling(args):
    from .asym import compare_exact, saddle_values

    digits = args.digits

    def fmt(x):
        return mp.nstr(x, digits)

    if args.compare_exact:
        cmp_ = compare_exact(args.m, args.r, args.n, digits=digits)
        data = cmp_.saddle
    else:
        cmp_ = None
        data = saddle_values(args.m, args.r, args.n, digits=digits)
    out = {
        "m": args.m, "r": args.r, "n": args.n, "digits": digits,
        "delta": fmt(data.delta),
        "g0": fmt(data.g0),
        "g2": fmt(data.g2),
        "log_asymptotic": fmt(data.log_asymptotic),
    }
    if cmp_ is not None:
        out["log_exact"] = fmt(cmp_.log_exact)
        out["rel_err"] = fmt(cmp_.rel_err)
        out["normalized_err"] = fmt(cmp_.normalized_err)
    _emit(out, args.format)
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="geomsieve",
        description="Exact lattice sieve and Dowling-number toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_fmt(p, default="json"):
        p.add_argument("--format", choices=["json", "text", "csv"],
                       default=default)

    p = sub.add_parser("lattice-check",
                       help="geometric axioms and sign-alternation check")
    p.add_argument("source", help="lattice JSON path or generator name")
    p.add_argument("--cap-elements", type=int, default=generators.DEFAULT_CAP)
    add_fmt(p)
    p.set_defaults(func=cmd_lattice_check)

    p = sub.add_parser("sieve-run", help="run a sieve instance JSON file")
    p.add_argument("path")
    p.add_argument("--cutoff", type=int, default=None,
                   help="truncation parameter for the two-sided bounds")
    p.add_argument("--cap-elements", type=int, default=generators.DEFAULT_CAP)
    add_fmt(p)
    p.set_defaults(func=cmd_sieve_run)

    p = sub.add_parser("verify-all", help="run the end-to-end checks")
    p.add_argument("--scope", choices=sorted(verify.SCOPES), default="all")
    p.add_argument("--fast", action="store_true",
                   help="smaller instances, skips the largest cases")
    add_fmt(p, default="text")
    p.set_defaults(func=cmd_verify_all)

    dow = sub.add_parser("dowling", help="triangles, lattices, numbers")
    dsub = dow.add_subparsers(dest="dowling_command", required=True)

    p = dsub.add_parser("table", help="Whitney triangle as CSV")
    p.add_argument("--kind", choices=["first", "second"], required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_dowling_table)

    p = dsub.add_parser("build", help="write a Dowling lattice JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--cap-elements", type=int, default=generators.DEFAULT_CAP)
    p.set_defaults(func=cmd_dowling_build)

    p = dsub.add_parser("conv", help="one shifted convolution value")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    add_fmt(p)
    p.set_defaults(func=cmd_dowling_conv)

    p = dsub.add_parser("numbers", help="Dowling numbers up to nmax")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--nmax", type=int, required=True)
    add_fmt(p)
    p.set_defaults(func=cmd_dowling_numbers)

    asy = sub.add_parser("asym", help="saddle-point asymptotics")
    asub = asy.add_subparsers(dest="asym_command", required=True)

    p = asub.add_parser("dowling", help="saddle data for D_{m,r}(n)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--compare-exact", action="store_true")
    p.add_argument("--digits", type=int, default=50)
    add_fmt(p)
    p.set_defaults(func=cmd_asym_dowling)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotGeometric as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except (GeomsieveError, ValueError, TypeError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
