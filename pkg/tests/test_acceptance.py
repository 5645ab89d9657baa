"""Acceptance suite: the package against the published homology tables.

One test per criterion, each printing a single summary line.  Everything
is exact arithmetic; the timed criteria assert their own budgets.  The
statements that are out of reach at desk scale are recorded as skips at
the bottom rather than silently dropped.

The hairy d-squared sweep caps the vertex count at 6 per block: the
trivalent cap 2g - 2 + h reaches 9 at two loops and seven hairs, and
enumeration there alone would blow the budget; splitting is local, so
the cap does not weaken the per-generator statement.  The bivalent
chain-map sweep likewise caps the loop order at 4 (at the bivalent
floor the edge count at fixed vertices is unbounded for odd n).
"""

import subprocess
import sys
import time
from pathlib import Path

import pytest

from graphhom.cli import gc_window, hgc_window
from graphhom.gc import diff as diff_gc
from graphhom.graphs import SEGMENT, ParityContext, enumerate_graphs
from graphhom.hgc import (attach_one_hair, degree_hgc, diff_hgc, line_mc,
                          mc_check, tripod_mc, twist_diff)
from graphhom.homology import build_block, homology_table, twoloop_genfun_coeffs

HAIRY_PAIRS = ((2, 4), (3, 5), (2, 5), (3, 4), (2, 2), (2, 3))


def nonzero(rows):
    return {r.degree: r.dim for r in rows if r.dim}


def block_dims(kind, ctx, g, h, window, **kw):
    return homology_table(build_block(kind, ctx, g, h, window, **kw))


@pytest.fixture(scope="module")
def hairy_generators():
    """Trivalent hairy generators, g <= 2, h <= 7, vertex cap 6, per pair."""
    slots = {}
    for m, n in HAIRY_PAIRS:
        ctx = ParityContext(n, m=m)
        rows = []
        if (n - m) % 2 == 0:
            rows.append((0, 1, 0, [SEGMENT]))
        for g in range(0, 3):
            for h in range(1, 8):
                for l in range(1, min(2 * g - 2 + h, 6) + 1):
                    gs = enumerate_graphs(ctx, l, g + l - 1, h)
                    if gs:
                        rows.append((g, h, l, gs))
        slots[m, n] = (ctx, rows)
    return slots


def test_criterion_01_differential_squares_to_zero(hairy_generators):
    start = time.monotonic()
    checked = 0
    for n in (2, 3):
        ctx = ParityContext(n)
        for g in range(2, 6):
            for l in range(1, min(2 * g - 2, 8) + 1):
                for gr in enumerate_graphs(ctx, l, g + l - 1):
                    assert diff_gc(ctx, diff_gc(ctx, gr)) == {}, gr.encode()
                    checked += 1
    for (m, n), (ctx, rows) in hairy_generators.items():
        for g, h, l, gs in rows:
            for gr in gs:
                assert diff_hgc(ctx, diff_hgc(ctx, gr)) == {}, \
                    ((m, n), gr.encode())
                checked += 1
    elapsed = time.monotonic() - start
    assert elapsed < 600
    print(f"criterion 1 PASS: d^2 = 0 on {checked} generators "
          f"({elapsed:.0f}s)")


def test_criterion_02_low_loop_tables():
    start = time.monotonic()
    expected = {
        2: {2: {}, 3: {0: 1}, 4: {}, 5: {0: 1}},
        3: {2: {3: 1}, 3: {3: 1}, 4: {3: 1}, 5: {3: 2}},
    }
    for n, per_g in expected.items():
        ctx = ParityContext(n)
        for g, dims in per_g.items():
            rows = block_dims("GC", ctx, g, None, gc_window(ctx, g))
            assert nonzero(rows) == dims, (n, g)
    elapsed = time.monotonic() - start
    assert elapsed < 900
    print(f"criterion 2 PASS: low-loop tables for n=2,3 up to g=5 "
          f"({elapsed:.0f}s)")


def test_criterion_02_optional_g6():
    pytest.skip("optional g=6 column not run: beyond the desk-scale budget")


def test_criterion_03_bivalent_one_loop_classes():
    for n, alive in ((2, (1, 5, 9)), (3, (3, 7))):
        ctx = ParityContext(n, min_valence=2)
        rows = block_dims("GC2", ctx, 1, None, (n - 9, n - 1))
        assert nonzero(rows) == {n - r: 1 for r in alive}, n
    print("criterion 3 PASS: one-loop classes at r in {1,5,9} (n=2), "
          "{3,7} (n=3), r <= 9")


def _loop_table(m, n, g, h_max=7):
    ctx = ParityContext(n, m=m)
    out = {}
    for h in range(1, h_max + 1):
        window = hgc_window(ctx, g, h)
        if window is None:
            continue
        dims = nonzero(block_dims("HGC", ctx, g, h, window))
        if dims:
            out[h] = dims
    return out


def test_criterion_04_zero_loop_classes():
    assert _loop_table(2, 4, 0) == {1: {1: 1}}     # the segment
    assert _loop_table(2, 5, 0) == {3: {3: 1}}     # the tripod
    assert _loop_table(3, 4, 0) == {3: {-1: 1}}    # tripod again, 2(n-m)-3
    print("criterion 4 PASS: zero-loop class at degree 1 (2,4), "
          "3 (2,5), -1 (3,4); h <= 7")


def test_criterion_05_one_loop_classes():
    assert _loop_table(2, 4, 1) == {h: {2: 1} for h in (1, 3, 5, 7)}
    assert _loop_table(3, 5, 1) == {h: {3: 1} for h in (2, 4, 6)}
    assert _loop_table(2, 5, 1) == {3: {5: 1}, 7: {9: 1}}
    assert _loop_table(3, 4, 1) == {1: {2: 1}, 5: {-2: 1}}
    print("criterion 5 PASS: one-loop classes at degree k(n-m-2)+m, "
          "hair parities per table; h <= 7")


def test_criterion_06_two_loop_generating_function():
    start = time.monotonic()
    t24 = twoloop_genfun_coeffs(2, 4, 8)
    assert t24.mismatches() == []
    assert {jk: d for jk, d in t24.items() if d} == \
        {(3, 6): 1, (3, 8): 1, (4, 7): 1}
    t25 = twoloop_genfun_coeffs(2, 5, 4)
    assert t25.mismatches() == []
    assert {jk: d for jk, d in t25.items() if d} == {(6, 1): 1, (7, 3): 1}
    elapsed = time.monotonic() - start
    assert elapsed < 1800
    print(f"criterion 6 PASS: two-loop dims match the generating function, "
          f"(2,4) h<=8 and (2,5) h<=4 ({elapsed:.0f}s)")


def test_criterion_07_maurer_cartan_residues():
    for n in (2, 3):
        ctx = ParityContext(n, m=n, min_valence=2)
        assert mc_check(ctx, line_mc(ctx, 1), cutoff=7) == {}, n
    for m, n in ((1, 2), (2, 3), (3, 4)):
        ctx = ParityContext(n, m=m)
        assert mc_check(ctx, tripod_mc(ctx, 1, cutoff=7), cutoff=7) == {}, \
            (m, n)
    print("criterion 7 PASS: line and odd-star series have zero MC "
          "residues through 7 hairs")


def test_criterion_08_hair_attachment_chain_map():
    start = time.monotonic()
    checked = 0
    for n in (2, 3):
        hctx = ParityContext(n, m=n, min_valence=2)
        gctx = ParityContext(n, min_valence=2)
        dtw = twist_diff(hctx, line_mc(hctx, 1), cutoff=7)
        for l in range(1, 6):
            for g_loop in range(0, 5):
                for gr in enumerate_graphs(gctx, l, g_loop + l - 1):
                    lhs = attach_one_hair(hctx, diff_gc(gctx, gr))
                    assert lhs == dtw(attach_one_hair(hctx, gr)), \
                        (n, gr.encode())
                    checked += 1
    elapsed = time.monotonic() - start
    print(f"criterion 8 PASS: hair attachment intertwines the "
          f"differentials on {checked} bivalent generators ({elapsed:.0f}s)")


def test_criterion_09_twisted_zero_loop_class():
    start = time.monotonic()
    ctx = ParityContext(3, m=2, min_valence=2)
    alpha = tripod_mc(ctx, 1, cutoff=7)
    rows = block_dims("HGC-twisted", ctx, 0, None, (-7, -1),
                      twist=alpha, cutoff=7)
    assert all(r.complete for r in rows)
    assert {r.degree: r.dim for r in rows} == \
        {-7: 0, -6: 0, -5: 0, -4: 0, -3: 0, -2: 0, -1: 1}
    elapsed = time.monotonic() - start
    print(f"criterion 9 PASS: twisted zero-loop homology of the (2,3) "
          f"complex is one class, at degree -1 ({elapsed:.0f}s)")


def test_criterion_10_degree_bounds(hairy_generators):
    checked = 0
    for (m, n), (ctx, rows) in hairy_generators.items():
        if n - m < 2:
            continue
        for g, h, l, gs in rows:
            for gr in gs:
                d = degree_hgc(ctx, gr)
                assert d >= 1, ((m, n), gr.encode())
                assert d >= g * (n - 3) + 1, ((m, n), gr.encode())
                checked += 1
    print(f"criterion 10 PASS: degrees >= 1 and >= g(n-3)+1 on "
          f"{checked} generators with n-m >= 2")


def test_criterion_11_degree_shift_periodicity():
    start = time.monotonic()
    for n in (2, 3):
        for g in range(2, 5):
            ctx_lo, ctx_hi = ParityContext(n), ParityContext(n + 2)
            lo = homology_table(
                build_block("GC", ctx_lo, g, None, gc_window(ctx_lo, g)))
            hi = homology_table(
                build_block("GC", ctx_hi, g, None, gc_window(ctx_hi, g)))
            shifted = {r.degree + 2 * g: r.dim for r in lo}
            assert shifted == {r.degree: r.dim for r in hi}, (n, g)
    elapsed = time.monotonic() - start
    print(f"criterion 11 PASS: tables for n and n+2 agree under the 2g "
          f"shift, n=2,3, g <= 4 ({elapsed:.0f}s)")


def test_criterion_12_property_suites_standalone():
    start = time.monotonic()
    root = Path(__file__).resolve().parent
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
         str(root / "test_gc.py"), str(root / "test_hgc.py"),
         str(root / "test_homology.py")],
        capture_output=True, text=True, cwd=root.parent)
    elapsed = time.monotonic() - start
    assert proc.returncode == 0, proc.stdout[-2000:]
    assert elapsed < 300
    print(f"criterion 12 PASS: algebraic property suites pass standalone "
          f"({elapsed:.0f}s)")


def test_out_of_scope_deep_loop_columns():
    pytest.skip("recorded out of scope: loop orders g >= 7 of the "
                "low-loop table are beyond desk scale")


def test_out_of_scope_grt_identification():
    pytest.skip("recorded out of scope: identifying the degree-0 "
                "classes with the Grothendieck-Teichmueller Lie algebra")


def test_out_of_scope_mapping_spaces():
    pytest.skip("recorded out of scope: topological mapping-space "
                "statements are not homology computations")
