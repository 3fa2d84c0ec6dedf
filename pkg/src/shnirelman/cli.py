"""Command-line front end.

Exit codes: 0 holds/success, 1 usage or input error, 2 hypothesis not met,
3 violated (or, for the nD Mann explorer, a candidate observation).

In every command the k-th set flag (``--set``/``--setA`` is 0, ``--setB`` is
1, product sets count on) is built with seed ``(seed, k)``, so identical
random specs still give independent sets.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone

from . import __version__
from .density import density, frac_str
from .order_core import Box, ConeContext, DEFAULT_IDEAL_CAP, IdealCapExceeded, downward_closure
from .pointset import sumset
from .setgen import ParseError, parse_and_build
from .theorems import (HOLDS, NOT_MET, VIOLATED, HypothesisNotMet, TheoremViolated,
                       basis_order, cover_check, mann_check, partition_j_star,
                       pigeonhole_decompose, pigeonhole_decompose_1d, verify_product_bound,
                       verify_shnirelman)

EXIT = {HOLDS: 0, NOT_MET: 2, VIOLATED: 3}


class UsageError(Exception):
    pass


def _box(args) -> Box:
    if args.m:
        try:
            m = tuple(int(v) for v in args.m.split(","))
        except ValueError:
            raise UsageError(f"--m must be comma-separated integers, got {args.m!r}")
    elif args.N is not None:
        m = (args.N,)
    else:
        raise UsageError("give the box with --N (dimension 1) or --m m1,...,mn")
    n = args.n if args.n is not None else len(m)
    if len(m) == 1 and n > 1:
        m = m * n
    if len(m) != n:
        raise UsageError(f"--n {n} does not match --m with {len(m)} bounds")
    try:
        return Box(m)
    except ValueError as exc:
        raise UsageError(str(exc))


def _build(spec, box, seed, k):
    if spec is None:
        raise UsageError("missing set specification")
    return parse_and_build(spec, box, seed=[seed, k])


def _config(args, box) -> dict:
    skip = {"func", "format", "output"}
    cfg = {k: v for k, v in vars(args).items() if k not in skip}
    cfg["box"] = box.to_list() if box is not None else None
    return cfg


def cmd_density(args, box):
    A = _build(args.set, box, args.seed, 0)
    rep = density(A, cap=args.cap)
    return {"theorem": "density", "verdict": HOLDS, **rep.to_dict()}, None


def cmd_sumset(args, box):
    A = _build(args.setA, box, args.seed, 0)
    B = _build(args.setB, box, args.seed, 1)
    C = sumset(A, B)
    return {"theorem": "sumset", "verdict": HOLDS, "size": len(C),
            "covers_box": C.is_full(), "sumset": C.to_list()}, None


def cmd_basis(args, box):
    A = _build(args.set, box, args.seed, 0)
    return basis_order(A, h_max=args.h_max, cap=args.cap).to_dict(), None


def _pigeonhole(A, B, box, x, cap):
    from .density import sigma_ideal_family

    alpha = sigma_ideal_family(A, cap=cap).value
    beta = sigma_ideal_family(B, cap=cap).value
    targets = [x] if x is not None else [
        p for p in box.cone_points() if box.n == 1 or sum(p) > 1]
    out = {"theorem": "shnirelman-pigeonhole" if box.n == 1 else "order-pigeonhole",
           "alpha": frac_str(alpha), "beta": frac_str(beta),
           "sigma_sum": frac_str(alpha + beta)}
    decs = []
    try:
        for t in targets:
            if box.n == 1:
                d = pigeonhole_decompose_1d(A, B, t[0], alpha=alpha, beta=beta)
            else:
                d = pigeonhole_decompose(A, B, t, alpha=alpha, beta=beta, cap=cap)
            decs.append({"x": list(t), "a": list(d.a), "b": list(d.b), "direct": d.direct})
    except HypothesisNotMet as exc:
        return {**out, "verdict": NOT_MET, "reason": str(exc)}
    except TheoremViolated as exc:
        return {**out, "verdict": VIOLATED, "reason": str(exc), "witnesses": decs}
    return {**out, "verdict": HOLDS, "witnesses": decs}


def cmd_verify(args, box):
    which = args.theorem
    if which == "product":
        specs = args.sets or [s for s in (args.setA, args.setB) if s]
        if len(specs) < 2:
            raise UsageError("verify product needs at least two sets (--sets S1 S2 ...)")
        sets = [_build(s, box, args.seed, k) for k, s in enumerate(specs)]
        return verify_product_bound(sets, cap=args.cap).to_dict(), None
    A = _build(args.setA, box, args.seed, 0)
    B = _build(args.setB, box, args.seed, 1)
    if which == "shnirelman":
        rep = verify_shnirelman(A, B, cap=args.cap)
        rows = [{"ideal": json.dumps([list(p) for p in sorted(pts)]), "margin": frac_str(m)}
                for pts, m in rep.margin_rows()]
        return rep.to_dict(include_margins=args.margins), rows
    if which == "cover":
        return cover_check(A, B, cap=args.cap).to_dict(), None
    if which == "mann":
        rep = mann_check(A, B, cap=args.cap)
        return rep.to_dict(), None
    x = None
    if args.x:
        x = tuple(int(v) for v in args.x.split(","))
        if x not in box:
            raise UsageError(f"target {x} is not in the boxed cone")
    try:
        return _pigeonhole(A, B, box, x, args.cap), None
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_partition(args, box):
    gens = _build(args.ideal, box, args.seed, 0)
    if not len(gens):
        raise UsageError("the ideal generators are empty")
    J = downward_closure(gens.points())
    B = _build(args.setB, box, args.seed, 1)
    try:
        cert = partition_j_star(J, B, ConeContext(box.n, extension=args.extension))
    except HypothesisNotMet as exc:
        return {"theorem": "partition", "verdict": NOT_MET, "reason": str(exc)}, None
    verdict = HOLDS if cert.valid else VIOLATED
    return {"theorem": "partition", "verdict": verdict, "certificate": cert.to_dict()}, None


def _criterion(args):
    fn, seed = args
    return fn(seed)


def cmd_suite(args, box):
    from .acceptance import CRITERIA

    if args.preset != "paper-acceptance":
        raise UsageError(f"unknown preset {args.preset!r}")
    jobs = max(1, args.jobs)
    if jobs == 1:
        results = [c(args.seed) for c in CRITERIA]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_criterion, [(c, args.seed) for c in CRITERIA]))
    if args.format == "text":
        for r in results:
            print(r.line(), file=sys.stderr)
    verdict = HOLDS if all(r.passed for r in results) else VIOLATED
    return {"theorem": "suite:paper-acceptance", "verdict": verdict,
            "criteria": [r.to_dict() for r in results]}, None


def _flatten(prefix, value, out):
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else k, v, out)
    else:
        out.append((prefix, json.dumps(value) if isinstance(value, list) else value))


def render(report: dict, rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    buf = io.StringIO()
    if fmt == "csv":
        writer = csv.writer(buf, lineterminator="\n")
        if rows:
            writer.writerow(["ideal", "margin"])
            for r in rows:
                writer.writerow([r["ideal"], r["margin"]])
        else:
            flat: list = []
            _flatten("", report, flat)
            writer.writerow(["field", "value"])
            writer.writerows(flat)
        return buf.getvalue()
    flat = []
    _flatten("", {k: v for k, v in report.items() if k != "config"}, flat)
    return "".join(f"{k}: {v}\n" for k, v in flat)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="dimension")
    common.add_argument("--N", type=int, help="upper bound of a one-dimensional box")
    common.add_argument("--m", help="per-coordinate bounds, e.g. 3,3")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap", type=int, default=DEFAULT_IDEAL_CAP,
                        help="maximum number of order ideals to enumerate")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--jobs", type=int, default=1)

    parser = argparse.ArgumentParser(prog="shnirelman", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("density", parents=[common], help="box-relative density of a set")
    p.add_argument("--set", required=True)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("sumset", parents=[common], help="the sumset A + B")
    p.add_argument("--setA", required=True)
    p.add_argument("--setB", required=True)
    p.set_defaults(func=cmd_sumset)

    p = sub.add_parser("basis", parents=[common], help="least basis order of a set")
    p.add_argument("--set", required=True)
    p.add_argument("--h-max", dest="h_max", type=int, default=16)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("verify", parents=[common], help="check one theorem on an instance")
    p.add_argument("theorem", choices=("shnirelman", "product", "pigeonhole", "cover", "mann"))
    p.add_argument("--setA")
    p.add_argument("--setB")
    p.add_argument("--sets", nargs="+", help="sets for the product bound")
    p.add_argument("--x", help="single pigeonhole target, e.g. 2,1")
    p.add_argument("--margins", action="store_true", help="include per-ideal margins in JSON")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("partition", parents=[common], help="partition certificate for J \\ B")
    p.add_argument("--ideal", required=True, help="set whose downward closure is J")
    p.add_argument("--setB", required=True)
    p.add_argument("--extension", choices=("lex", "topological"), default="lex")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("suite", parents=[common], help="run a battery of checks")
    p.add_argument("--preset", default="paper-acceptance")
    p.set_defaults(func=cmd_suite)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        box = None if args.command == "suite" else _box(args)
        report, rows = args.func(args, box)
    except (UsageError, ParseError, FileNotFoundError, IdealCapExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report = {"config": _config(args, box),
              "tool": {"name": "shnirelman", "version": __version__},
              "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
              **report}
    text = render(report, rows, args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    code = EXIT.get(report.get("verdict"), 0)
    if report.get("observation") == "candidate-observation":
        code = 3
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
