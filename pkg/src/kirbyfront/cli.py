"""Command-line interface.

Subcommands::

    parse <file>                      validate and echo the canonical form
    apply <file> --move <name> --site e0..e1/s0..s1 [args] -o <out>
    invariants <file> [--json]        classical invariants, census, H1
    render <file> -o <svg>
    normalize <file> [-o <out>]
    ribbon <subcmd>                   invariants | normalize --target ...
    verify <scenario id> | --all [--jobs N] [--json]
    framing-check --n <n> --samples <s> --tol <t> --seed <x>

Exit codes: 0 pass, 2 precondition failure, 3 assertion/verification
failure, 4 I/O or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from .diagram import (
    DiagramError,
    ParseError,
    parse_front,
    serialize_front,
    trace_components,
    validate_diagram,
)
from .framing import framing_map_check
from .invariants import (
    InvariantError,
    all_classical_invariants,
    handle_census,
    homology_presentation,
    linking_matrix,
)
from .moves import MoveError, normalize
from .render import render_svg
from .ribbon import (
    RibbonError,
    clasp_transpose,
    normalize_surface,
    parse_ribbon,
    serialize_ribbon,
    surface_invariants,
)
from .scenarios import SCENARIOS, verify_scenario
from .scripts import MoveStep, MoveScript, run_script, _parse_site

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_ASSERTION = 3
EXIT_IO = 4


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise SystemExit(_fail(f"cannot read {path}: {exc}", EXIT_IO))


def _write(path, text):
    if path == "-" or path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _fail(message, code):
    print(f"error: {message}", file=sys.stderr)
    return code


def cmd_parse(args):
    try:
        d = parse_front(_read(args.file))
    except ParseError as exc:
        return _fail(str(exc), EXIT_IO)
    problems = validate_diagram(d)
    if problems:
        return _fail("; ".join(problems), EXIT_PRECONDITION)
    sys.stdout.write(serialize_front(d))
    return EXIT_OK


def cmd_apply(args):
    try:
        d = parse_front(_read(args.file))
    except ParseError as exc:
        return _fail(str(exc), EXIT_IO)
    step_args = {}
    for kv in args.arg or []:
        k, _, v = kv.partition("=")
        step_args[k] = v
    site = _parse_site(args.site) if args.site else None
    if args.components:
        from dataclasses import replace as _rep

        ids = tuple(int(x) for x in args.components.split(","))
        if site is None:
            from .moves import site_at

            site = site_at(0, 1, components=ids)
        else:
            site = _rep(site, components=ids)
    step = MoveStep(move=args.move, site=site, args=step_args)
    try:
        final, _log = run_script(MoveScript(initial=d, steps=(step,)))
    except MoveError as exc:
        return _fail(str(exc), EXIT_PRECONDITION)
    _write(args.output, serialize_front(final))
    return EXIT_OK


def cmd_invariants(args):
    try:
        d = parse_front(_read(args.file))
    except ParseError as exc:
        return _fail(str(exc), EXIT_IO)
    out = {}
    census = handle_census(d)
    out["census"] = {str(k): v for k, v in sorted(census.counts.items())}
    out["chi"] = census.euler
    try:
        per = all_classical_invariants(d)
        out["components"] = {
            str(cid): {"tb": inv.tb, "rot": inv.rot, "writhe": inv.writhe}
            for cid, inv in sorted(per.items())
        }
        lk = linking_matrix(d)
        out["linking"] = [list(row) for row in lk.matrix]
        out["over_ones"] = {
            f"{a}/{b}": v for (a, b), v in sorted(lk.over_ones.items())
        }
        out["h1"] = homology_presentation(d)
    except InvariantError as exc:
        out["note"] = str(exc)
    if args.json:
        json.dump(out, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    else:
        for key in ("components", "census", "chi", "linking", "over_ones", "h1", "note"):
            if key in out:
                print(f"{key}: {out[key]}")
    return EXIT_OK


def cmd_render(args):
    try:
        d = parse_front(_read(args.file))
    except ParseError as exc:
        return _fail(str(exc), EXIT_IO)
    _write(args.output, render_svg(d))
    return EXIT_OK


def cmd_normalize(args):
    try:
        d = parse_front(_read(args.file))
    except ParseError as exc:
        return _fail(str(exc), EXIT_IO)
    _write(args.output, serialize_front(normalize(d)))
    return EXIT_OK


def cmd_ribbon(args):
    try:
        s = parse_ribbon(_read(args.file))
    except RibbonError as exc:
        return _fail(str(exc), EXIT_IO)
    if args.ribbon_cmd == "invariants":
        inv = surface_invariants(s)
        out = {
            "genus": inv.genus,
            "boundary_components": inv.boundary_components,
            "euler": inv.euler,
            "orientable": inv.orientable,
        }
        json.dump(out, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
        return EXIT_OK
    if args.ribbon_cmd == "normalize":
        target = {"planar": "planar", "connected": "connected"}[args.target]
        try:
            steps = normalize_surface(s, target)
        except RibbonError as exc:
            return _fail(str(exc), EXIT_PRECONDITION)
        cur = s
        for (disk, slot) in steps:
            cur = clasp_transpose(cur, disk, slot)
        report = {
            "steps": [[d_, k] for (d_, k) in steps],
            "final": serialize_ribbon(cur),
        }
        json.dump(report, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
        return EXIT_OK
    return _fail(f"unknown ribbon subcommand {args.ribbon_cmd!r}", EXIT_IO)


def cmd_verify(args):
    ids = sorted(SCENARIOS) if args.all else [args.scenario]
    if not ids or ids == [None]:
        return _fail("verify needs a scenario id or --all", EXIT_IO)
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(verify_scenario, ids))
    else:
        reports = [verify_scenario(i) for i in ids]
    ok = all(r["pass"] for r in reports)
    if args.json:
        json.dump(reports, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    else:
        for r in reports:
            status = "PASS" if r["pass"] else "FAIL"
            print(f"{r['id']}: {status} ({r['wall_time']:.2f}s)")
            if r["error"]:
                print(f"  {r['error']}")
    return EXIT_OK if ok else EXIT_ASSERTION


def cmd_framing_check(args):
    report = framing_map_check(args.n, samples=args.samples, tol=args.tol, seed=args.seed)
    out = report.as_dict()
    if args.json:
        json.dump(out, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    else:
        for key, value in sorted(out.items()):
            print(f"{key}: {value}")
    return EXIT_OK if report.passed else EXIT_ASSERTION


def build_parser():
    ap = argparse.ArgumentParser(
        prog="kirbyfront",
        description="Rewriting engine for Legendrian Kirby diagrams in front form",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("parse", help="validate and canonicalize a .front file")
    p.add_argument("file")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("apply", help="apply one move")
    p.add_argument("file")
    p.add_argument("--move", required=True)
    p.add_argument("--site", help="e0..e1/s0..s1")
    p.add_argument("--components", help="comma-separated component ids")
    p.add_argument("--arg", action="append", help="key=value move argument")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("invariants", help="classical invariants, census, H1")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("render", help="render to SVG")
    p.add_argument("file")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("normalize", help="greedy reduction to normal form")
    p.add_argument("file")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("ribbon", help="disk-band surface operations")
    rsub = p.add_subparsers(dest="ribbon_cmd", required=True)
    ri = rsub.add_parser("invariants")
    ri.add_argument("file")
    ri.set_defaults(func=cmd_ribbon)
    rn = rsub.add_parser("normalize")
    rn.add_argument("file")
    rn.add_argument("--target", choices=["planar", "connected"], required=True)
    rn.set_defaults(func=cmd_ribbon)

    p = sub.add_parser("verify", help="replay bundled scenarios")
    p.add_argument("scenario", nargs="?")
    p.add_argument("--all", action="store_true")
    p.add_argument("--jobs", type=int, default=4)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("framing-check", help="verify the framing matrices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_framing_check)

    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
