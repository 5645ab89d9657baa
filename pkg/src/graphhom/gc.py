"""Kontsevich graph complex operations: insertion, bracket, differential.

The pre-Lie product alpha . beta sums over vertices v of alpha and all ways
phi of reattaching the edge ends incident to v onto vertices of beta.  In
cell terms, beta's vertex block replaces v's position in alpha's vertex
order and beta's edge cells follow all of alpha's.  For odd n the splice
inserts lb - 1 extra odd vertex lines at slot v, so the term carries the
Koszul factor (-1)^{v (lb - 1)}; for even n vertex lines are even and there
is no sign.  This is the unique convention (up to a gauge rescaling by
(-1)^{(l-1)(lb-1)}) for which the insertion is graded pre-Lie, the bracket
with the single-edge graph reproduces the unfiltered differential with
global sign +1, and [edge, edge] = 0; the tests enforce all three.  The
bracket is the graded commutator of the insertion product.

The differential splits a vertex v into v -- x (new edge, new vertex, both
cells at the front of the list) and distributes the incident items (edge
ends, and hairs in a hairy context) over the two ends.  Distributions are
kept when both new vertices meet the valence floor of the context, so the
differential is on the nose the adjoint of edge contraction on the span:
d^2 = 0 holds because contracting twice is symmetric.  For the trivalent
non-hairy complex this agrees with the convention that generates all
splittings and lets the sub-trivalent ones cancel (they cancel pairwise
across the two ends of the subdivided edge; see the tests), but generating
them is never necessary.  `diff_unfiltered` keeps every splitting with both
sides nonempty; on it the differential is literally the bracket with the
single-edge graph, up to one global sign, which the tests pin down.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .graphs import (Combo, Graph, ParityContext, combo_add, combo_scale,
                     normalize)

EDGE = Graph.make(2, [(0, 1)])


def unit(g: Graph, c=1) -> Combo:
    return {g: Fraction(c)}


def degree_gc(ctx: ParityContext, g: Graph) -> int:
    if ctx.hairy:
        raise ValueError("use degree_hgc in a hairy context")
    return (ctx.n - 1) * len(g.edges) - ctx.n * g.nv + ctx.n


def _vertex_items(g: Graph, v: int) -> list[tuple]:
    """Incident item slots at v: edge ends ('a'/'b', edge index), hairs."""
    items: list[tuple] = []
    for ei, (a, b) in enumerate(g.edges):
        if a == v:
            items.append(("a", ei))
        if b == v:
            items.append(("b", ei))
    hid = 0
    for w in range(g.nv):
        for _ in range(g.hairs[w]):
            if w == v:
                items.append(("h", hid))
            hid += 1
    return items


def _split_cells(g: Graph, v: int, moved: set[tuple]) -> tuple[int, list[tuple]]:
    """Cells after splitting v, with the items in `moved` going to the new
    vertex x = g.nv.  New vertex cell and new edge cell sit at the front."""
    x = g.nv
    cells: list[tuple] = [("v", x), ("e", v, x)]
    for w in range(g.nv):
        cells.append(("v", w))
    for ei, (a, b) in enumerate(g.edges):
        a2 = x if ("a", ei) in moved else a
        b2 = x if ("b", ei) in moved else b
        cells.append(("e", a2, b2))
    hids = [(w, j) for w in range(g.nv) for j in range(g.hairs[w])]
    for hid, (w, _) in enumerate(hids):
        w2 = x if ("h", hid) in moved else w
        cells.append(("he", w2, hids[hid]))
    for hid in hids:
        cells.append(("hs", hid))
    return g.nv + 1, cells


def _split_terms(ctx: ParityContext, g: Graph, min_items: int) -> Combo:
    acc: Combo = {}
    for v in range(g.nv):
        items = _vertex_items(g, v)
        k = len(items)
        if k < 2 * min_items:
            continue
        for size in range(min_items, k - min_items + 1):
            for moved in itertools.combinations(items, size):
                mset = set(moved)
                # both ends of a tadpole moving together would drag the
                # whole loop to x; that is a legal distribution
                nv2, cells = _split_cells(g, v, mset)
                res = normalize(ctx, nv2, cells)
                if res is not None:
                    combo_add(acc, res[0], res[1])
    return acc


def diff(ctx: ParityContext, arg) -> Combo:
    """The differential (vertex splitting), kept within the valence floor."""
    combo = unit(arg) if isinstance(arg, Graph) else arg
    acc: Combo = {}
    for g, c in combo.items():
        if g.segment:
            continue  # no internal vertex to split
        for h, w in _split_terms(ctx, g, ctx.min_valence - 1).items():
            combo_add(acc, h, w * c)
    return acc


def diff_unfiltered(ctx: ParityContext, arg) -> Combo:
    """All splittings with both sides nonempty, regardless of valence."""
    combo = unit(arg) if isinstance(arg, Graph) else arg
    acc: Combo = {}
    for g, c in combo.items():
        if g.segment:
            continue
        for h, w in _split_terms(ctx, g, 1).items():
            combo_add(acc, h, w * c)
    return acc


def _insert_graph(ctx: ParityContext, alpha: Graph, beta: Graph) -> Combo:
    la, lb = alpha.nv, beta.nv
    acc: Combo = {}
    for v in range(la):
        # Koszul factor for splicing beta's vertex block into slot v: the
        # lb - 1 extra odd vertex lines (odd n only) cross the v lines in
        # front of the slot.  Even n: vertex lines are even, no sign.
        pref = Fraction(-1) ** (ctx.n * v * (lb - 1))

        def rel(w: int) -> int:
            return w if w < v else w + lb - 1

        items = _vertex_items(alpha, v)
        for phi in itertools.product(range(lb), repeat=len(items)):
            targets = dict(zip(items, (v + t for t in phi)))
            cells: list[tuple] = []
            for w in range(la):
                if w == v:
                    cells.extend(("v", v + j) for j in range(lb))
                else:
                    cells.append(("v", rel(w)))
            for ei, (a, b) in enumerate(alpha.edges):
                a2 = targets[("a", ei)] if a == v else rel(a)
                b2 = targets[("b", ei)] if b == v else rel(b)
                cells.append(("e", a2, b2))
            for a, b in beta.edges:
                cells.append(("e", v + a, v + b))
            res = normalize(ctx, la + lb - 1, cells, pref)
            if res is not None:
                combo_add(acc, res[0], res[1])
    return acc


def insert(ctx: ParityContext, alpha, beta) -> Combo:
    """Pre-Lie insertion product, bilinear in both arguments."""
    ca = unit(alpha) if isinstance(alpha, Graph) else alpha
    cb = unit(beta) if isinstance(beta, Graph) else beta
    acc: Combo = {}
    for ga, wa in ca.items():
        for gb, wb in cb.items():
            for g, w in _insert_graph(ctx, ga, gb).items():
                combo_add(acc, g, w * wa * wb)
    return acc


def bracket(ctx: ParityContext, alpha, beta) -> Combo:
    """Graded commutator of the insertion product."""
    ca = unit(alpha) if isinstance(alpha, Graph) else alpha
    cb = unit(beta) if isinstance(beta, Graph) else beta
    acc: Combo = {}
    for ga, wa in ca.items():
        for gb, wb in cb.items():
            sign = Fraction(-1) ** (degree_gc(ctx, ga) * degree_gc(ctx, gb))
            for g, w in _insert_graph(ctx, ga, gb).items():
                combo_add(acc, g, w * wa * wb)
            for g, w in _insert_graph(ctx, gb, ga).items():
                combo_add(acc, g, -sign * w * wa * wb)
    return acc
