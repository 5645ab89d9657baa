"""Homology of the graph complexes, one bigraded block at a time.

Vertex splitting preserves the loop order g = edges - vertices + 1 and, in
the hairy case, the hair count, so every complex here is a direct sum of
blocks indexed by g or by (g, h).  Within a block the homological degree
pins the vertex count l:

    GC / GC2      degree = (n-1) g + 1 - l
    HGC / HGC2    degree = (n-1)(g-1) + (n-m-1) h + m - l

with g + l - 1 edges throughout.  A block is therefore assembled degree by
degree from the generator enumeration, the differential becomes a finite
sparse matrix, and the dimensions come out of exact rank computations.

Trivalent blocks are finite: 2 edges + hairs >= 3 l caps l at 2g - 2 + h.
Bivalent blocks are finite in each degree but unbounded across degrees
(chains of bivalent vertices), so the caller picks the degree window.
Bases one degree beyond each end of the window are built as well; every
reported degree then has both of its neighbouring differentials and there
are no edge effects.

The segment is bookkept in the (g, h) = (0, 1) block, in its own degree
n - m - 1, mirroring the enumeration slot (0 vertices, 0 edges, 1 hair).
By its symmetry it behaves as a two-hair object inside the algebra, but as
a basis element it occupies exactly one slot and the differential never
moves it, so either accounting gives the same tables; this one keeps the
0-loop block of the line-graph class at h = 1.

A twisted block mixes hair counts: its space in each degree is the union
of the (g, h) slices for h up to a cutoff and its differential is
d + [alpha, -] for a Maurer-Cartan alpha.  Discarding the terms with more
than `cutoff` hairs is a genuine quotient complex (neither d nor the
bracket with alpha ever removes hairs, so the high-hair part is a
subcomplex).  The reported numbers are the exact homology of that
quotient; how far they approximate the full complex is tracked by the
weight bounds in the mclie module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

from .exact import SparseMatrix, homology_dim, rank
from .gc import diff as diff_gc
from .graphs import Combo, Graph, ParityContext, SEGMENT, enumerate_graphs
from .hgc import diff_hgc, twist_diff

KINDS = ("GC", "GC2", "HGC", "HGC2", "HGC-twisted")

_MIN_VALENCE = {"GC": 3, "GC2": 2, "HGC": 3, "HGC2": 2}


def vertices_at(kind: str, ctx: ParityContext, g: int, h: int | None,
                degree: int) -> int | None:
    """Vertex count of the (g, h) slice in one degree, or None if empty.

    None means provably empty for counting reasons: negative counts, the
    valence floor, or more hairs than vertices when hairs are odd objects.
    The segment slot is handled by block_basis, not here.
    """
    n = ctx.n
    if kind in ("GC", "GC2"):
        l = (n - 1) * g + 1 - degree
        if g < 1 or l < 1:
            return None
        if kind == "GC" and l > 2 * g - 2:
            return None
        return l
    m = ctx.m
    l = (n - 1) * (g - 1) + (n - m - 1) * h + m - degree
    if g < 0 or h < 1 or l < 1:
        return None
    if kind == "HGC" and l > 2 * g - 2 + h:
        return None
    if ctx.hairs_odd and h > l:
        return None
    return l


def block_basis(kind: str, ctx: ParityContext, g: int, h: int | None,
                degree: int) -> list[Graph]:
    """Ordered basis of the (g, h) slice in one degree."""
    out: list[Graph] = []
    if (kind in ("HGC", "HGC2") and (g, h) == (0, 1)
            and degree == ctx.n - ctx.m - 1 and (ctx.n - ctx.m) % 2 == 0):
        out.append(SEGMENT)
    l = vertices_at(kind, ctx, g, h, degree)
    if l is not None:
        out.extend(enumerate_graphs(ctx, l, g + l - 1,
                                    h if ctx.hairy else 0))
    return out


def _twisted_basis(ctx: ParityContext, g: int, degree: int,
                   cutoff: int) -> list[Graph]:
    kind = "HGC" if ctx.min_valence == 3 else "HGC2"
    out: list[Graph] = []
    for h in range(1, cutoff + 1):
        out.extend(block_basis(kind, ctx, g, h, degree))
    return out


@dataclass
class ComplexBlock:
    """One bigraded block: bases per degree and differential matrices.

    `bases` covers lo - 1 .. hi + 1 for the reporting window (lo, hi), and
    `matrices[D]` is d: C_D -> C_{D-1} (one column per basis element of
    C_D), present for lo .. hi + 1.  `h` is None for the GC kinds and for
    twisted blocks; twisted blocks carry the hair cutoff instead.
    """
    kind: str
    ctx: ParityContext
    g: int
    h: int | None
    degrees: tuple[int, int]
    bases: dict[int, list[Graph]]
    matrices: dict[int, SparseMatrix]
    cutoff: int | None = None


def _expand(dfun: Callable[[Graph], Combo], domain: list[Graph],
            codomain: list[Graph]) -> SparseMatrix:
    index = {gph: i for i, gph in enumerate(codomain)}
    mat = SparseMatrix(len(codomain), len(domain))
    for j, gph in enumerate(domain):
        for out, c in dfun(gph).items():
            i = index.get(out)
            if i is None:
                raise RuntimeError(
                    f"differential output {out.encode()} escapes the block")
            mat[i, j] = c
    return mat


def build_block(kind: str, ctx: ParityContext, g: int, h: int | None,
                degree_range: tuple[int, int], *, twist: Combo | None = None,
                cutoff: int = 7) -> ComplexBlock:
    """Assemble bases and differential matrices over a degree window.

    `degree_range` is the inclusive window (lo, hi) of degrees the caller
    wants homology for.  For the twisted kind pass the Maurer-Cartan
    element as `twist`; its differential keeps only outputs with at most
    `cutoff` hairs and the bases match (quotient complex, see the module
    docstring).
    """
    if kind not in KINDS:
        raise ValueError(f"unknown block kind {kind!r}")
    if kind == "HGC-twisted":
        if not ctx.hairy:
            raise ValueError("twisted blocks need a hairy context")
        if h is not None:
            raise ValueError("twisted blocks mix hair counts; pass h=None")
        if twist is None:
            raise ValueError("twisted blocks need the twisting element")
    else:
        if twist is not None:
            raise ValueError(f"kind {kind} does not take a twist")
        if ctx.min_valence != _MIN_VALENCE[kind]:
            raise ValueError(
                f"kind {kind} needs min_valence {_MIN_VALENCE[kind]}, "
                f"context has {ctx.min_valence}")
        if kind in ("GC", "GC2"):
            if ctx.hairy:
                raise ValueError(f"kind {kind} needs a hairless context")
            if h is not None:
                raise ValueError(f"kind {kind} has no hair grading")
        else:
            if not ctx.hairy:
                raise ValueError(f"kind {kind} needs a hairy context")
            if h is None or h < 1:
                raise ValueError("hairy blocks need a hair count h >= 1")

    lo, hi = degree_range
    bases: dict[int, list[Graph]] = {}
    matrices: dict[int, SparseMatrix] = {}
    if lo > hi:
        return ComplexBlock(kind, ctx, g, h, (lo, hi), bases, matrices,
                            cutoff if kind == "HGC-twisted" else None)

    for D in range(lo - 1, hi + 2):
        if kind == "HGC-twisted":
            bases[D] = _twisted_basis(ctx, g, D, cutoff)
        else:
            bases[D] = block_basis(kind, ctx, g, h, D)

    if kind == "HGC-twisted":
        dfun = twist_diff(ctx, twist, cutoff=cutoff)
    elif kind in ("GC", "GC2"):
        dfun = lambda gph: diff_gc(ctx, gph)
    else:
        dfun = lambda gph: diff_hgc(ctx, gph)
    for D in range(lo, hi + 2):
        matrices[D] = _expand(dfun, bases[D], bases[D - 1])
    return ComplexBlock(kind, ctx, g, h, (lo, hi), bases, matrices,
                        cutoff if kind == "HGC-twisted" else None)


@dataclass(frozen=True)
class HomologyRow:
    kind: str
    n: int
    m: int | None
    g: int
    h: int | None
    degree: int
    dim: int
    complete: bool


def homology_table(block: ComplexBlock, **rank_kwargs) -> list[HomologyRow]:
    """Homology dimensions for every degree in the block's window.

    A row is complete when both neighbouring differentials are present,
    which build_block always arranges; on a degraded block (say a partial
    cache payload) the dim of an incomplete row is only an upper bound,
    computed with the missing side treated as zero.
    """
    ctx = block.ctx
    lo, hi = block.degrees
    rows = []
    for D in range(lo, hi + 1):
        complete = D in block.matrices and D + 1 in block.matrices
        if complete:
            dim = homology_dim(block.matrices[D], block.matrices[D + 1],
                               **rank_kwargs)
        else:
            dim = len(block.bases.get(D, ()))
            if D in block.matrices:
                dim -= rank(block.matrices[D], **rank_kwargs)
            if D + 1 in block.matrices:
                dim -= rank(block.matrices[D + 1], **rank_kwargs)
        rows.append(HomologyRow(block.kind, ctx.n, ctx.m, block.g, block.h,
                                D, dim, complete))
    return rows


def euler_check(block: ComplexBlock, **rank_kwargs) -> bool:
    """Euler-Poincare cross-check on a whole finite block.

    Requires the slice to vanish outside the window (checked through the
    padding bases), then compares the alternating sums of chain and
    homology dimensions.  Any inequality means a rank or differential bug.
    """
    lo, hi = block.degrees
    if block.bases.get(lo - 1) or block.bases.get(hi + 1):
        raise ValueError("euler_check needs the window to cover the block")
    chain = sum((-1) ** D * len(block.bases.get(D, ()))
                for D in range(lo, hi + 1))
    hom = sum((-1) ** r.degree * r.dim
              for r in homology_table(block, **rank_kwargs))
    return chain == hom


# -- 2-loop generating function ------------------------------------------

def _inv_series(d1: int, d2: int, order: int) -> list[int]:
    """Coefficients of 1 / ((1 - T^d1)(1 - T^d2)) up to T^order."""
    coef = [0] * (order + 1)
    for a in range(0, order + 1, d1):
        for b in range(0, order + 1 - a, d2):
            coef[a + b] += 1
    return coef


def _twoloop_series(m: int, n: int, h_max: int) -> dict[tuple[int, int], int]:
    """Closed-form 2-loop homology dims, by hair count and degree.

    The four parity cases are rational functions in T, where a T-power
    carries one hair and n - m - 2 degrees; the two numerator stems sit in
    degrees n - 3 + m and n - 2 + m on top of that.
    """
    def at(coef, i):
        return coef[i] if 0 <= i < len(coef) else 0

    if m % 2 == 0 and n % 2 == 0:
        inv = _inv_series(2, 6, h_max)
        low = lambda t: at(inv, t - 6)
        high = lambda t: at(inv, t - 7)
    elif m % 2 == 1 and n % 2 == 1:
        inv = _inv_series(2, 6, h_max)
        low = lambda t: at(inv, t) - (1 if t == 0 else 0)
        high = lambda t: at(inv, t - 1)
    elif m % 2 == 0:  # m even, n odd
        inv = _inv_series(4, 12, h_max)
        low = lambda t: (at(inv, t - 3) + at(inv, t - 11)
                         + at(inv, t - 14) - at(inv, t - 15))
        high = lambda t: at(inv, t - 1) + at(inv, t - 16)
    else:  # m odd, n even
        inv = _inv_series(4, 12, h_max)
        low = lambda t: at(inv, t - 2) + at(inv, t - 11)
        high = lambda t: at(inv, t - 4) + at(inv, t - 13)

    out: dict[tuple[int, int], int] = {}
    for k in range(1, h_max + 1):
        j = n - 3 + m + (n - m - 2) * k
        out[(j, k)] = low(k)
        out[(j + 1, k)] = high(k)
    return out


class TwoLoopTable(dict):
    """(degree, hairs) -> computed 2-loop homology dimension.

    Zero-filled over the whole degree window of each hair count; `series`
    holds the closed-form coefficients on the same keys, and mismatches()
    lists any key where the two sides disagree.
    """

    def __init__(self, dims, series):
        super().__init__(dims)
        self.series = dict(series)

    def mismatches(self) -> list[tuple[int, int]]:
        return sorted(k for k in self if self[k] != self.series[k])


def twoloop_genfun_coeffs(m: int, n: int, h_max: int,
                          **rank_kwargs) -> TwoLoopTable:
    """Computed 2-loop homology paired with the closed-form coefficients.

    Builds the full (g=2, h) block for every h up to h_max (the degree
    window runs from the all-trivalent vertex count l = h + 2 down to
    l = 1) and lays the closed-form series over the same keys.
    """
    if n - m < 0:
        raise ValueError("needs n >= m")
    if h_max > 8:
        raise ValueError("2-loop blocks beyond 8 hairs are out of reach")
    ctx = ParityContext(n=n, m=m, min_valence=3)
    dims: dict[tuple[int, int], int] = {}
    for k in range(1, h_max + 1):
        dmin = n - 3 + m + (n - m - 2) * k
        dmax = n - 2 + m + (n - m - 1) * k
        block = build_block("HGC", ctx, 2, k, (dmin, dmax))
        for row in homology_table(block, **rank_kwargs):
            dims[(row.degree, k)] = row.dim
    series = {key: 0 for key in dims}
    for key, c in _twoloop_series(m, n, h_max).items():
        if c or key in series:
            series[key] = c
            dims.setdefault(key, 0)
    return TwoLoopTable(dims, series)


# -- serialization ----------------------------------------------------------

CSV_HEADER = "kind,n,m,g,h,degree,dim,complete"


def table_csv(rows: list[HomologyRow]) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(",".join([
            r.kind, str(r.n), "" if r.m is None else str(r.m), str(r.g),
            "" if r.h is None else str(r.h), str(r.degree), str(r.dim),
            "true" if r.complete else "false"]))
    return "\n".join(lines) + "\n"


def table_json(rows: list[HomologyRow]) -> str:
    payload = [{"kind": r.kind, "n": r.n, "m": r.m, "g": r.g, "h": r.h,
                "degree": r.degree, "dim": r.dim, "complete": r.complete}
               for r in rows]
    return json.dumps(payload, indent=1) + "\n"
