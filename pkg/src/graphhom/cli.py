"""Command-line driver: block enumeration, homology tables, verification.

The homology commands split the requested window into bigraded blocks,
compute each one exactly, and write the collected table as CSV and JSON.
Finished blocks are cached on disk under a content hash of everything
that determines the answer (complex parameters, block coordinates,
degree window, twisting data, rank strategy, code version), so reruns
and interrupted sweeps only pay for what is missing.  Cache writes go
through a temp file and an atomic rename, which keeps concurrent
workers from seeing half-written entries.

Degree windows are chosen automatically where the blocks are finite
(the trivalent kinds: the vertex count is pinned between 1 and
2g - 2 + h) and must be given explicitly with --degrees at the bivalent
floor or under twisting, where blocks extend indefinitely.

`verify` recomputes the published homology tables this package is
checked against and diffs the results; the heavier invariant sweeps
(differential squares to zero, periodicity, bracket identities) live in
the test suite instead.

Exit codes: 0 success, 1 verification mismatch, 2 invalid flags,
3 a differential failed to square to zero (sign conventions broken).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .exact import CompositionNonzero
from .graphs import ParityContext, enumerate_graphs
from .hgc import WrongCodimension, line_mc, mc_check, tripod_mc
from .homology import (HomologyRow, build_block, homology_table, table_csv,
                       table_json, twoloop_genfun_coeffs)

# -- degree windows -----------------------------------------------------------


def gc_window(ctx: ParityContext, g: int) -> tuple[int, int] | None:
    """Full degree window of the trivalent loop-g block, None if empty."""
    l_max = 2 * g - 2
    if l_max < 1:
        return None
    top = (ctx.n - 1) * g  # one vertex fewer than edges
    return (top + 1 - l_max, top)


def hgc_window(ctx: ParityContext, g: int, h: int) -> tuple[int, int] | None:
    """Full degree window of the trivalent (g, h) block, segment included."""
    n, m = ctx.n, ctx.m
    seg = (g, h) == (0, 1) and (n - m) % 2 == 0
    l_max = 2 * g - 2 + h
    if l_max < 1:
        return (n - m - 1, n - m - 1) if seg else None
    base = (n - 1) * (g - 1) + (n - m - 1) * h + m
    lo, hi = base - l_max, base - 1
    if seg:
        lo, hi = min(lo, n - m - 1), max(hi, n - m - 1)
    return (lo, hi)


# -- block cache --------------------------------------------------------------


def _rank_kwargs(exact: bool, primes):
    if exact:
        return {"exact": True}
    if primes:
        return {"primes": tuple(primes)}
    return {}


def _block_key(kind, ctx, g, h, degrees, twist, cutoff, exact, primes) -> str:
    fields = {
        "version": __version__,
        "kind": kind,
        "ctx": [ctx.n, ctx.m, ctx.min_valence, ctx.allow_tadpoles],
        "g": g,
        "h": h,
        "degrees": list(degrees),
        "twist": (sorted([gr.encode(), str(c)] for gr, c in twist.items())
                  if twist else None),
        "cutoff": cutoff if twist is not None else None,
        "rank": ["exact"] if exact else ["primes", primes or None],
    }
    blob = json.dumps(fields, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def _cache_get(cache_dir, key):
    path = Path(cache_dir) / f"{key}.json"
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError):
        return None


def _cache_put(cache_dir, key, payload) -> None:
    root = Path(cache_dir)
    root.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=root, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh, sort_keys=True)
        os.replace(tmp, root / f"{key}.json")
    except BaseException:
        os.unlink(tmp)
        raise


def _row_dict(r: HomologyRow) -> dict:
    return {"kind": r.kind, "n": r.n, "m": r.m, "g": r.g, "h": r.h,
            "degree": r.degree, "dim": r.dim, "complete": r.complete}


def _run_block(task) -> dict:
    """Compute (or fetch) one block task; returns the cache payload."""
    (kind, ctx, g, h, degrees, twist, cutoff, exact, primes,
     cache_dir) = task
    key = _block_key(kind, ctx, g, h, degrees, twist, cutoff, exact, primes)
    if cache_dir:
        hit = _cache_get(cache_dir, key)
        if hit is not None:
            return hit
    block = build_block(kind, ctx, g, h, degrees, twist=twist, cutoff=cutoff)
    rows = homology_table(block, **_rank_kwargs(exact, primes))
    payload = {
        "rows": [_row_dict(r) for r in rows],
        "bases": {str(D): [gr.encode() for gr in basis]
                  for D, basis in sorted(block.bases.items())},
        "matrices": {str(D): mat.to_sms()
                     for D, mat in sorted(block.matrices.items())},
    }
    if cache_dir:
        _cache_put(cache_dir, key, payload)
    return payload


def _run_blocks(tasks, jobs: int) -> list[dict]:
    if jobs <= 1 or len(tasks) <= 1:
        return [_run_block(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_block, tasks))


# -- shared flag handling -----------------------------------------------------


def _parse_range(text: str, flag: str, parser) -> tuple[int, int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        parser.error(f"{flag} wants A..B or a single integer, got {text!r}")
    if lo > hi:
        parser.error(f"{flag}: empty range {text!r}")
    return lo, hi


def _parse_primes(text: str, parser) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        parser.error(f"--primes wants a comma-separated list, got {text!r}")


def _parse_twist(text: str, ctx: ParityContext, cutoff: int, parser):
    name, _, lam_s = text.partition(":")
    try:
        lam = Fraction(lam_s) if lam_s else Fraction(1)
    except ValueError:
        parser.error(f"--twist: bad coefficient {lam_s!r}")
    try:
        if name == "line":
            return line_mc(ctx, lam)
        if name == "tripod":
            return tripod_mc(ctx, lam, cutoff=cutoff)
    except WrongCodimension as exc:
        parser.error(str(exc))
    parser.error(f"--twist wants line or tripod:<coeff>, got {text!r}")


def _add_rank_flags(sub) -> None:
    sub.add_argument("--jobs", type=int, default=1, metavar="J",
                     help="parallel block workers (default 1)")
    sub.add_argument("--exact", action="store_true",
                     help="rational elimination for every rank")
    sub.add_argument("--primes", metavar="p1,p2",
                     help="modular rank primes (certified by bound)")
    sub.add_argument("--cache-dir", metavar="DIR",
                     help="block cache (or env GRAPHHOM_CACHE; "
                          "default .graphhom-cache/)")
    sub.add_argument("--out", metavar="PREFIX",
                     help="output file prefix (default from the window)")
    sub.add_argument("--matrices", metavar="DIR",
                     help="also dump differentials as .sms text files")


def _cache_dir(args) -> str:
    return (args.cache_dir or os.environ.get("GRAPHHOM_CACHE")
            or ".graphhom-cache")


def _emit(payloads: list[dict], prefix: str, matrices_dir, names) -> None:
    rows = [HomologyRow(**d) for p in payloads for d in p["rows"]]
    csv = table_csv(rows)
    sys.stdout.write(csv)
    Path(f"{prefix}.csv").write_text(csv)
    Path(f"{prefix}.json").write_text(table_json(rows) + "\n")
    print(f"wrote {prefix}.csv and {prefix}.json ({len(rows)} rows)",
          file=sys.stderr)
    if matrices_dir:
        root = Path(matrices_dir)
        root.mkdir(parents=True, exist_ok=True)
        count = 0
        for name, payload in zip(names, payloads):
            for D, sms in payload["matrices"].items():
                (root / f"{name}-d{D}.sms").write_text(sms)
                count += 1
        print(f"wrote {count} matrices to {matrices_dir}", file=sys.stderr)


# -- subcommands --------------------------------------------------------------


def cmd_enumerate(args, parser) -> int:
    if args.hairs and args.m is None:
        parser.error("--hairs needs a hairy context: pass --m")
    ctx = ParityContext(args.n, m=args.m, min_valence=args.min_valence,
                        allow_tadpoles=not args.no_tadpoles)
    graphs = enumerate_graphs(ctx, args.vertices, args.edges, args.hairs)
    for gr in graphs:
        print(gr.encode())
    print(f"total {len(graphs)}")
    return 0


def cmd_gc_homology(args, parser) -> int:
    ctx = ParityContext(args.n, min_valence=args.min_valence)
    kind = "GC" if args.min_valence == 3 else "GC2"
    g_lo, g_hi = _parse_range(args.loops, "--loops", parser)
    degrees = (_parse_range(args.degrees, "--degrees", parser)
               if args.degrees else None)
    if kind == "GC2" and degrees is None:
        parser.error("bivalent blocks have no top vertex count; "
                     "pass --degrees A..B")
    primes = _parse_primes(args.primes, parser) if args.primes else None
    cache = _cache_dir(args)
    tasks, names = [], []
    for g in range(g_lo, g_hi + 1):
        window = degrees if degrees is not None else gc_window(ctx, g)
        if window is None:
            continue
        tasks.append((kind, ctx, g, None, window, None, 7,
                      args.exact, primes, cache))
        names.append(f"g{g}")
    payloads = _run_blocks(tasks, args.jobs)
    prefix = args.out or f"{kind.lower()}-n{args.n}-loops{g_lo}-{g_hi}"
    _emit(payloads, prefix, args.matrices, names)
    return 0


def cmd_hgc_homology(args, parser) -> int:
    ctx = ParityContext(args.n, m=args.m, min_valence=args.min_valence)
    g_lo, g_hi = _parse_range(args.loops, "--loops", parser)
    h_lo, h_hi = _parse_range(args.hairs, "--hairs", parser)
    if h_lo < 1:
        parser.error("--hairs: hairy blocks start at one hair")
    degrees = (_parse_range(args.degrees, "--degrees", parser)
               if args.degrees else None)
    primes = _parse_primes(args.primes, parser) if args.primes else None
    cache = _cache_dir(args)
    tasks, names = [], []
    if args.twist:
        twist = _parse_twist(args.twist, ctx, h_hi, parser)
        if degrees is None:
            parser.error("twisted blocks mix hair counts and extend "
                         "indefinitely; pass --degrees A..B")
        for g in range(g_lo, g_hi + 1):
            tasks.append(("HGC-twisted", ctx, g, None, degrees, twist,
                          h_hi, args.exact, primes, cache))
            names.append(f"g{g}")
        prefix = args.out or (f"hgc-twisted-m{args.m}-n{args.n}"
                              f"-loops{g_lo}-{g_hi}")
    else:
        kind = "HGC" if args.min_valence == 3 else "HGC2"
        if kind == "HGC2" and degrees is None:
            parser.error("bivalent blocks have no top vertex count; "
                         "pass --degrees A..B")
        for g in range(g_lo, g_hi + 1):
            for h in range(h_lo, h_hi + 1):
                window = (degrees if degrees is not None
                          else hgc_window(ctx, g, h))
                if window is None:
                    continue
                tasks.append((kind, ctx, g, h, window, None, 7,
                              args.exact, primes, cache))
                names.append(f"g{g}-h{h}")
        prefix = args.out or (f"{kind.lower()}-m{args.m}-n{args.n}"
                              f"-loops{g_lo}-{g_hi}-hairs{h_lo}-{h_hi}")
    payloads = _run_blocks(tasks, args.jobs)
    _emit(payloads, prefix, args.matrices, names)
    return 0


# -- verification against the published tables --------------------------------

# each entry: (name, quick, builder) where builder(runner) returns
# (expected, got); expected values are published homology tables


def _dims(runner, kind, ctx, g, h, window, twist=None, cutoff=7):
    payload = runner((kind, ctx, g, h, window, twist, cutoff,
                      False, None, runner.cache))
    return {d["degree"]: d["dim"] for d in payload["rows"] if d["dim"]}


def _check_gc(runner, n, per_g):
    ctx = ParityContext(n)
    expected, got = {}, {}
    for g, dims in per_g.items():
        expected[g] = dims
        got[g] = _dims(runner, "GC", ctx, g, None, gc_window(ctx, g))
    return expected, got


def _check_gc2_loops(runner, n, alive, r_max):
    ctx = ParityContext(n, min_valence=2)
    window = (n - r_max, n - 1)
    expected = {n - r: 1 for r in alive if r <= r_max}
    return expected, _dims(runner, "GC2", ctx, 1, None, window)


def _check_hairy_zero_loop(runner, m, n, h_max, anchor):
    ctx = ParityContext(n, m=m)
    expected, got = {anchor[0]: {anchor[1]: 1}}, {}
    for h in range(1, h_max + 1):
        window = hgc_window(ctx, 0, h)
        if window is None:
            continue
        dims = _dims(runner, "HGC", ctx, 0, h, window)
        if dims:
            got[h] = dims
    return expected, got


def _check_hairy_one_loop(runner, m, n, h_max, alive, degree_of):
    ctx = ParityContext(n, m=m)
    expected = {h: {degree_of(h): 1} for h in alive if h <= h_max}
    got = {}
    for h in range(1, h_max + 1):
        dims = _dims(runner, "HGC", ctx, 1, h, hgc_window(ctx, 1, h))
        if dims:
            got[h] = dims
    return expected, got


def _check_twoloop(runner, m, n, h_max, alive):
    table = twoloop_genfun_coeffs(m, n, h_max)
    expected = dict.fromkeys(alive, 1)
    got = {jk: d for jk, d in table.items() if d}
    if table.mismatches():
        got["series mismatches"] = table.mismatches()
    return expected, got


def _check_mc(ctx, alpha, cutoff):
    residues = mc_check(ctx, alpha, cutoff=cutoff)
    return {}, {h: "nonzero" for h, r in residues.items() if r}


def _check_twisted_tripod(runner):
    ctx = ParityContext(3, m=2, min_valence=2)
    alpha = tripod_mc(ctx, 1, cutoff=3)
    return {-1: 1}, _dims(runner, "HGC-twisted", ctx, 0, None, (-3, 0),
                          twist=alpha, cutoff=3)


def _check_enumerate_slots():
    expected = {"tripod": ["G l=1 h=3 e="], "segment": ["SEG"],
                "segment odd codim": []}
    got = {
        "tripod": [gr.encode() for gr in enumerate_graphs(
            ParityContext(5, m=2), 1, 0, 3)],
        "segment": [gr.encode() for gr in enumerate_graphs(
            ParityContext(4, m=2), 0, 0, 1)],
        "segment odd codim": [gr.encode() for gr in enumerate_graphs(
            ParityContext(4, m=3), 0, 0, 1)],
    }
    return expected, got


def _verify_checks():
    """(name, in_quick, builder) triples; all dims are published values."""
    return [
        ("gc n=2 loops 2..3", True,
         lambda r: _check_gc(r, 2, {2: {}, 3: {0: 1}})),
        ("gc n=3 loops 2..3", True,
         lambda r: _check_gc(r, 3, {2: {3: 1}, 3: {3: 1}})),
        ("gc n=2 loops 4..5", False,
         lambda r: _check_gc(r, 2, {4: {}, 5: {0: 1}})),
        ("gc n=3 loops 4..5", False,
         lambda r: _check_gc(r, 3, {4: {3: 1}, 5: {3: 2}})),
        ("gc2 n=2 one-loop r<=5", True,
         lambda r: _check_gc2_loops(r, 2, (1, 5, 9), 5)),
        ("gc2 n=3 one-loop r<=5", True,
         lambda r: _check_gc2_loops(r, 3, (3, 7), 5)),
        ("gc2 n=2 one-loop r<=9", False,
         lambda r: _check_gc2_loops(r, 2, (1, 5, 9), 9)),
        ("gc2 n=3 one-loop r<=9", False,
         lambda r: _check_gc2_loops(r, 3, (3, 7), 9)),
        ("hairy (2,4) zero-loop h<=5", True,
         lambda r: _check_hairy_zero_loop(r, 2, 4, 5, (1, 1))),
        ("hairy (2,4) zero-loop h<=7", False,
         lambda r: _check_hairy_zero_loop(r, 2, 4, 7, (1, 1))),
        ("hairy (2,5) zero-loop h<=7", False,
         lambda r: _check_hairy_zero_loop(r, 2, 5, 7, (3, 3))),
        ("hairy (3,4) zero-loop h<=7", False,
         lambda r: _check_hairy_zero_loop(r, 3, 4, 7, (3, -1))),
        ("hairy (2,4) one-loop h<=5", True,
         lambda r: _check_hairy_one_loop(r, 2, 4, 5, (1, 3, 5, 7),
                                         lambda h: 2)),
        ("hairy (2,4) one-loop h<=7", False,
         lambda r: _check_hairy_one_loop(r, 2, 4, 7, (1, 3, 5, 7),
                                         lambda h: 2)),
        ("hairy (3,5) one-loop h<=7", False,
         lambda r: _check_hairy_one_loop(r, 3, 5, 7, (2, 4, 6),
                                         lambda h: 3)),
        ("hairy (2,5) one-loop h<=7", False,
         lambda r: _check_hairy_one_loop(r, 2, 5, 7, (3, 7),
                                         lambda h: h + 2)),
        ("hairy (3,4) one-loop h<=7", False,
         lambda r: _check_hairy_one_loop(r, 3, 4, 7, (1, 5),
                                         lambda h: 3 - h)),
        ("hairy (2,5) two-loop h<=4", False,
         lambda r: _check_twoloop(r, 2, 5, 4, [(6, 1), (7, 3)])),
        ("mc line n=2", True,
         lambda r: _check_mc(ParityContext(2, m=2, min_valence=2),
                             line_mc(ParityContext(2, m=2, min_valence=2)),
                             5)),
        ("mc line n=3", False,
         lambda r: _check_mc(ParityContext(3, m=3, min_valence=2),
                             line_mc(ParityContext(3, m=3, min_valence=2)),
                             5)),
        ("mc tripod (2,3) h<=5", True,
         lambda r: _check_mc(ParityContext(3, m=2),
                             tripod_mc(ParityContext(3, m=2), 1, cutoff=5),
                             5)),
        ("mc tripod (1,2) h<=7", False,
         lambda r: _check_mc(ParityContext(2, m=1),
                             tripod_mc(ParityContext(2, m=1), 1, cutoff=7),
                             7)),
        ("mc tripod (2,3) h<=7", False,
         lambda r: _check_mc(ParityContext(3, m=2),
                             tripod_mc(ParityContext(3, m=2), 1, cutoff=7),
                             7)),
        ("mc tripod (3,4) h<=7", False,
         lambda r: _check_mc(ParityContext(4, m=3),
                             tripod_mc(ParityContext(4, m=3), 1, cutoff=7),
                             7)),
        ("twisted (2,3) loop-0 tripod class", False, _check_twisted_tripod),
        ("enumeration anchors", True,
         lambda r: _check_enumerate_slots()),
    ]


def cmd_verify(args, parser) -> int:
    cache = _cache_dir(args)

    def runner(task):
        return _run_block(task)

    runner.cache = cache
    failures = 0
    ran = 0
    for name, quick, builder in _verify_checks():
        if args.quick and not quick:
            continue
        ran += 1
        expected, got = builder(runner)
        if expected == got:
            print(f"ok   {name}")
        else:
            failures += 1
            print(f"FAIL {name}: expected {expected}, got {got}")
    print(f"{ran} checks, {failures} failed")
    return 1 if failures else 0


# -- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphhom",
        description="exact homology of graph complexes, plain and hairy")
    sub = parser.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser("enumerate", help="list the generators of a slot")
    p_enum.add_argument("--n", type=int, required=True)
    p_enum.add_argument("--m", type=int)
    p_enum.add_argument("--vertices", type=int, required=True)
    p_enum.add_argument("--edges", type=int, required=True)
    p_enum.add_argument("--hairs", type=int, default=0)
    p_enum.add_argument("--min-valence", type=int, choices=(2, 3), default=3)
    p_enum.add_argument("--no-tadpoles", action="store_true")

    p_gc = sub.add_parser("gc", help="plain graph complexes")
    gc_sub = p_gc.add_subparsers(dest="gc_command", required=True)
    p_gch = gc_sub.add_parser("homology", help="homology table of a window")
    p_gch.add_argument("--n", type=int, required=True)
    p_gch.add_argument("--loops", required=True, metavar="A..B")
    p_gch.add_argument("--min-valence", type=int, choices=(2, 3), default=3)
    p_gch.add_argument("--degrees", metavar="A..B",
                       help="degree window (required at the bivalent floor)")
    _add_rank_flags(p_gch)

    p_hgc = sub.add_parser("hgc", help="hairy graph complexes")
    hgc_sub = p_hgc.add_subparsers(dest="hgc_command", required=True)
    p_hgch = hgc_sub.add_parser("homology", help="homology table of a window")
    p_hgch.add_argument("--n", type=int, required=True)
    p_hgch.add_argument("--m", type=int, required=True)
    p_hgch.add_argument("--loops", required=True, metavar="A..B")
    p_hgch.add_argument("--hairs", required=True, metavar="A..B")
    p_hgch.add_argument("--twist", metavar="line|tripod:<coeff>",
                        help="twist by a Maurer-Cartan series")
    p_hgch.add_argument("--min-valence", type=int, choices=(2, 3), default=3)
    p_hgch.add_argument("--degrees", metavar="A..B",
                        help="degree window (required at the bivalent floor "
                             "and under twisting)")
    _add_rank_flags(p_hgch)

    p_ver = sub.add_parser("verify",
                           help="recompute the published tables and diff")
    p_ver.add_argument("--quick", action="store_true",
                       help="the under-a-minute subset")
    p_ver.add_argument("--cache-dir", metavar="DIR")
    return parser


_RANGE_FLAGS = {"--degrees", "--loops", "--hairs"}
_RANGE_RE = re.compile(r"^-?\d+(\.\.-?\d+)?$")


def _glue_ranges(argv: list[str]) -> list[str]:
    """Join range flags to negative values, which argparse reads as flags."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _RANGE_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            elif _RANGE_RE.match(nxt):
                out.append(f"{tok}={nxt}")
            else:
                out.extend([tok, nxt])
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_ranges(
        sys.argv[1:] if argv is None else list(argv)))
    try:
        if args.command == "enumerate":
            return cmd_enumerate(args, parser)
        if args.command == "gc":
            return cmd_gc_homology(args, parser)
        if args.command == "hgc":
            return cmd_hgc_homology(args, parser)
        return cmd_verify(args, parser)
    except CompositionNonzero as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, WrongCodimension) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
