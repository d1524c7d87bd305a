"""Command line front end.

Exit codes: 0 success, 2 bad arguments or input, 3 resource guard.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import List, Optional

from . import catalogue as catmod
from .cells import NotCompleteError, cell_complex, invariants, is_simplicial
from .enumerator import (EnumerationOptions, ResourceGuardError, default_jobs, enumerate_all,
                         naive_simplicial_classes)
from .iso import make_record
from .render import render_ascii, render_svg
from .stretch import hasse_edges, pappus_obstruction, realize_numeric
from .wiring import AllowableSequence, WiringError

MAX_LINES = 27
EXIT_OK, EXIT_USAGE, EXIT_GUARD = 0, 2, 3

log = logging.getLogger("simparr")


class UsageError(Exception):
    pass


def _write(path: Optional[str], text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _load_wiring(arg: str) -> AllowableSequence:
    """A wiring from ``n:a,b;...`` or from a file in the two-line text format."""
    try:
        if ":" in arg and not os.path.exists(arg):
            return AllowableSequence.from_compact(arg)
        text = _read(arg)
        if ":" in text.split("\n", 1)[0]:
            return AllowableSequence.from_compact(text.strip())
        return AllowableSequence.from_text(text)
    except (ValueError, WiringError) as exc:
        raise UsageError(f"bad wiring {arg!r}: {exc}") from exc


def _load_catalogue(path: str) -> catmod.Catalogue:
    try:
        return catmod.loads(_read(path))
    except catmod.CatalogueError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def cmd_enumerate(args) -> int:
    n = args.lines
    if n < 3:
        raise UsageError("--lines must be at least 3")
    if n > MAX_LINES and not args.force:
        raise ResourceGuardError(f"n={n} exceeds the supported range (<= {MAX_LINES}); "
                                 f"pass --force to run anyway")
    options = {"include_near_pencils": str(int(args.include_near_pencils)),
               "simpobstr7": str(int(args.simpobstr7))}
    if args.naive:
        recs = [r for r in naive_simplicial_classes(n)
                if args.include_near_pencils or not r.near_pencil]
        options["method"] = "naive"
    else:
        opts = EnumerationOptions(include_near_pencils=args.include_near_pencils,
                                  use_simpobstr7=args.simpobstr7, worker_count=args.jobs,
                                  junction_cap_override=args.cap, mode=args.mode)
        recs = enumerate_all(n, opts)
        if args.mode != "pruned":
            options["mode"] = args.mode
    cat = catmod.from_records(n, recs, options)
    _write(args.output, cat.dumps(args.format))
    log.info("n=%d: %d classes", n, len(cat.records))
    return EXIT_OK


def cmd_analyze(args) -> int:
    cat = _load_catalogue(args.catalogue)
    fmt = args.format or catmod.detect_format(_read(args.catalogue))
    for rec in cat.records:
        w = rec.wiring
        c = cell_complex(w)
        if not is_simplicial(c):
            raise UsageError(f"record {rec.certificate[:16]} is not simplicial")
        fresh = make_record(w, rec.flags.get("np") == "1")
        rec.automorphisms = fresh.automorphisms
        rec.flags["pappus"] = "1" if pappus_obstruction(w, c) is not None else "0"
        if args.realize:
            if rec.flags["pappus"] == "1":
                rec.flags["real"] = "none"
            else:
                r = realize_numeric(w)
                rec.flags["real"] = "none" if r is None else ("exact" if r.exact else "float")
    _write(args.output, cat.dumps(fmt))
    flagged = sum(r.flags["pappus"] == "1" for r in cat.records)
    print(f"n={cat.n}: {len(cat.records)} classes, {flagged} pappus-obstructed", file=sys.stderr)
    return EXIT_OK


def cmd_render(args) -> int:
    w = _load_wiring(args.wiring)
    try:
        text = render_svg(w) if args.style == "svg" else render_ascii(w)
    except WiringError as exc:
        raise UsageError(f"invalid wiring: {exc}") from exc
    _write(args.output, text)
    return EXIT_OK


def cmd_hasse(args) -> int:
    recs = []
    for path in args.catalogues:
        for r in _load_catalogue(path).records:
            recs.append(make_record(r.wiring, r.flags.get("np") == "1"))
    recs.sort(key=lambda r: (r.wiring.n, r.certificate))
    edges = sorted(e.to_text() for e in hasse_edges(recs))
    _write(args.output, "".join(e + "\n" for e in edges))
    return EXIT_OK


def cmd_invariants(args) -> int:
    w = _load_wiring(args.wiring)
    try:
        c = cell_complex(w)
    except NotCompleteError as exc:
        raise UsageError(str(exc)) from exc
    inv = invariants(c)
    simp = is_simplicial(c)
    line = f"{inv.to_text()}\tsimplicial={int(simp)}"
    if simp:
        rec = make_record(w)
        line += f"\taut={rec.automorphisms}\tcert={rec.certificate}"
    _write(args.output, line + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="simparr",
                                description="Simplicial pseudoline arrangements: enumeration and analysis.")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", help="enumerate simplicial wirings up to isomorphism")
    e.add_argument("--lines", "-n", type=int, required=True)
    e.add_argument("--include-near-pencils", action="store_true")
    e.add_argument("--jobs", "-j", type=int, default=default_jobs(),
                   help="worker processes (default: $SIMPARR_JOBS or 1)")
    e.add_argument("--simpobstr7", action="store_true", help="also use the unproven extra cutoffs")
    e.add_argument("--format", choices=("text", "jsonl"), default="text")
    e.add_argument("--mode", choices=("pruned", "reference"), default="pruned")
    e.add_argument("--cap", type=int, default=None, help="override the junction size cap")
    e.add_argument("--naive", action="store_true", help="brute force over all wirings (n <= 7)")
    e.add_argument("--force", action="store_true")
    e.add_argument("--output", "-o")
    e.set_defaults(func=cmd_enumerate)

    a = sub.add_parser("analyze", help="Pappus test, automorphisms, optional realization")
    a.add_argument("catalogue")
    a.add_argument("--realize", action="store_true")
    a.add_argument("--format", choices=("text", "jsonl"))
    a.add_argument("--output", "-o")
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("render", help="draw a wiring diagram")
    r.add_argument("wiring", help="'n:a,b;a,b;...' or a file")
    r.add_argument("--style", choices=("svg", "ascii"), default="svg")
    r.add_argument("--output", "-o")
    r.set_defaults(func=cmd_render)

    h = sub.add_parser("hasse", help="covering edges of the deletion order")
    h.add_argument("catalogues", nargs="+")
    h.add_argument("--output", "-o")
    h.set_defaults(func=cmd_hasse)

    i = sub.add_parser("invariants", help="f-, t- and r-vectors of a wiring")
    i.add_argument("wiring")
    i.add_argument("--output", "-o")
    i.set_defaults(func=cmd_invariants)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s %(message)s", stream=sys.stderr)
    if getattr(args, "jobs", 1) is not None and getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
