"""Command-line entry point: ``apn-horizon <command> ...``.

Machine-readable output goes to stdout (JSON lines unless noted), progress and
summaries to stderr.  Exit codes: 0 clean, 2 APN witnesses found, 1 error.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys

from . import bluher, curves, family, orbits, search
from . import field as fieldmod
from .errors import CapExceeded, DomainError, ParameterError
from .family import FamilyParams
from .field import fmt_hex, parse_hex
from .subfield import build

EXIT_OK, EXIT_ERROR, EXIT_WITNESS = 0, 1, 2


def _emit(record: dict, out=None) -> None:
    print(json.dumps(record), file=out or sys.stdout)


def _context(args):
    modulus = parse_hex(args.modulus) if args.modulus else None
    ctx = fieldmod.get_field(args.m, modulus)
    return ctx, build(ctx)


def cmd_apn_check(args) -> int:
    ctx, view = _context(args)
    params = FamilyParams(args.m, args.r, parse_hex(args.b), parse_hex(args.c), ctx)
    record = {
        "m": args.m,
        "r": args.r,
        "b": fmt_hex(params.b),
        "c": fmt_hex(params.c),
    }
    if args.fast:
        if params.c == 0:
            x = family.construct_zero_c0(view, params.b, params.r)
            has_zero, extra = True, {"witness_u": None, "path": "c0-construction"}
            zeros, witnesses = None, [fmt_hex(x)]
        else:
            verdict = bluher.has_zero_fast(params, view, bluher.bluher_set_for(view, params.r))
            has_zero = verdict.has_zero
            extra = {
                "witness_u": None if verdict.witness_u is None else fmt_hex(verdict.witness_u),
                "path": None if verdict.path is None else verdict.path.value,
            }
            zeros, witnesses = None, []
        mode = "fast"
    else:
        zc = family.count_zeros_P(params)
        has_zero, extra = zc.count > 0, {}
        zeros, witnesses = zc.count, [fmt_hex(x) for x in zc.witnesses[: family.REPORT_WITNESS_CAP]]
        mode = "direct"
    record.update(
        zeros=zeros,
        witnesses=witnesses,
        verdict="not-apn" if has_zero else "apn",
        mode=mode,
        modulus=fmt_hex(ctx.modulus),
        xi=fmt_hex(view.xi),
        out_of_window=not params.in_window,
        **extra,
    )
    _emit(record)
    return EXIT_OK


def cmd_bluher_set(args) -> int:
    ctx, view = _context(args)
    bset = bluher.build_bluher_set(ctx, view, args.r)
    lines = "".join(f"{fmt_hex(a)}\n" for a in bset.members())
    if args.dump:
        with open(args.dump, "w") as fh:
            fh.write(lines)
    else:
        sys.stdout.write(lines)
    print(f"m={args.m} r={args.r} members={len(bset)}", file=sys.stderr)
    return EXIT_OK


def cmd_projective(args) -> int:
    ctx, _ = _context(args)
    found, root = bluher.projective_has_root(ctx, parse_hex(args.A), args.r)
    print(fmt_hex(root) if found else "none")
    return EXIT_OK


def cmd_orbits(args) -> int:
    ctx, view = _context(args)
    part = orbits.partition(ctx, view, args.r)
    summary = {
        "m": args.m,
        "r": args.r,
        "classes": len(part),
        "pair_classes": orbits.pair_orbit_count(ctx, view, args.r),
        "modulus": fmt_hex(ctx.modulus),
    }
    rows = [(fmt_hex(rep), part.class_sizes[rep]) for rep in part.representatives]
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["representative", "class_size"])
            writer.writerows(rows)
        _emit(summary)
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(["representative", "class_size"])
        writer.writerows(rows)
        print(json.dumps(summary), file=sys.stderr)
    return EXIT_OK


def cmd_count_points(args) -> int:
    ctx, view = _context(args)
    params = FamilyParams(args.m, args.r, parse_hex(args.b), parse_hex(args.c), ctx)
    spec = curves.CurveSpec(params, view)
    count = curves.count_affine_points(spec, force=args.force)
    lower, upper = curves.aubry_perret_window(view.q, spec.degree)
    _emit({
        "m": args.m,
        "r": args.r,
        "b": fmt_hex(params.b),
        "c": fmt_hex(params.c),
        "count": count,
        "lower": lower,
        "upper": upper,
        "in_window": curves.in_aubry_perret_window(count, view.q, spec.degree),
        "d": spec.degree,
        "xi": fmt_hex(view.xi),
        "modulus": fmt_hex(ctx.modulus),
    })
    return EXIT_OK


def cmd_threshold(args) -> int:
    res = curves.guaranteed_point(args.m, args.r)
    _emit({
        "m": res.m,
        "r": res.r,
        "q": res.q,
        "d": res.d,
        "guaranteed": res.guaranteed,
        "lower_bound_positive": res.lower_bound_positive,
        "small_r_condition": res.small_r_condition,
    })
    return EXIT_OK


def cmd_verify(args) -> int:
    modulus = parse_hex(args.modulus) if args.modulus else None
    report = search.verify_conjecture(
        args.m, args.r, mode=args.mode, threads=args.threads, modulus=modulus,
        force=args.force, progress=True,
    )
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        for rec in report.witness_records():
            _emit(rec, out)
        _emit(report.summary_record(), out)
    finally:
        if args.out:
            out.close()
    return EXIT_WITNESS if report.witnesses else EXIT_OK


def cmd_audit(args) -> int:
    modulus = parse_hex(args.modulus) if args.modulus else None
    exhaustive = True if args.exhaustive else None
    report = search.equivalence_audit(args.m, args.r, exhaustive=exhaustive, samples=args.samples,
                                      seed=args.seed, modulus=modulus)
    _emit(report.record())
    return EXIT_OK if report.diagonal else EXIT_ERROR


def cmd_sweep_c0(args) -> int:
    modulus = parse_hex(args.modulus) if args.modulus else None
    report = search.sweep_c0(args.m, args.r, modulus)
    _emit(report.record())
    return EXIT_WITNESS if report.failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="apn-horizon", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, needs_r=True):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--m", type=int, required=True)
        if needs_r:
            p.add_argument("--r", type=int, required=True)
        p.add_argument("--modulus", help="irreducible modulus as hex (default: smallest irreducible)")
        p.set_defaults(func=func)
        return p

    p = add("apn-check", cmd_apn_check, "decide one (m, r, b, c)")
    p.add_argument("--b", required=True)
    p.add_argument("--c", required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--direct", action="store_true", help="exact zero count of P (default)")
    group.add_argument("--fast", action="store_true", help="projective-polynomial criterion")

    p = add("bluher-set", cmd_bluher_set, "list rootless A for x^(2^r+1)+x+A")
    p.add_argument("--dump", metavar="PATH")

    p = add("projective", cmd_projective, "smallest root of x^(2^r+1)+x+A")
    p.add_argument("--A", required=True)

    p = add("orbits", cmd_orbits, "orbit classes of b under the (u, k) action")
    p.add_argument("--csv", metavar="PATH")

    p = add("count-points", cmd_count_points, "affine F_q-points of D_{b,c,r}")
    p.add_argument("--b", required=True)
    p.add_argument("--c", required=True)
    p.add_argument("--force", action="store_true")

    add("threshold", cmd_threshold, "Hasse-Weil style point guarantee for (m, r)")

    p = add("verify-conjecture", cmd_verify, "orbit-reduced sweep over all (b, c)")
    p.add_argument("--mode", choices=search.MODES, default="fast")
    p.add_argument("--threads", type=int, help="worker threads (default: $APN_HORIZON_THREADS or 1)")
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--force", action="store_true", help="allow m above the sweep cap")

    p = add("audit", cmd_audit, "direct differential check vs. zeros of P")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)

    add("sweep-c0", cmd_sweep_c0, "constructive zeros of P for c = 0")
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stderr)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, DomainError, CapExceeded, search.OracleMismatch, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
