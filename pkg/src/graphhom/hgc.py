"""Hairy graph complexes: degrees, differential, bracket, Maurer-Cartan
elements, twisted differentials, and the one-hair comparison maps.

Normalization.  A vertex carrying j hairs stands for the j-th divided
power of a hair slot, so every operation computed on labeled hairs is
rescaled by the ratio of hair factorials prod_v hairs(v)! between output
and inputs.  In this basis the odd-star series with unit coefficients
satisfies the Maurer-Cartan equation on the nose, which is what pins the
normalization (together with the global sign of d and the factor 2(-1)^n
in the product below; see tripod_mc).

The differential.  On the trivalent complexes d is minus the same vertex
splitting as in the non-hairy complex, hairs riding along as items.  On
the bivalent complexes each hair additionally subdivides, with coefficient
-2: the hair's edge gains a new internal vertex keeping the hair.  The
subdivision terms are forced: without them the splittings that isolate a
single hair on the new vertex break d^2 = 0 (their two complementary item
distributions agree after canonicalization instead of cancelling), and
-2 is the unique nonzero coefficient restoring it.  Pinned by d^2 = 0,
by the one-hair map from the non-hairy complex being a chain map on the
nose, and by the odd-star Maurer-Cartan equation at three hairs.

The product.  star(alpha, beta) attaches each hair of alpha to each
internal vertex of beta and carries the global factor 2(-1)^n: the hair's
edge cell becomes an internal edge in place, the hair's slot cell is
consumed, and beta's slot block takes its position while beta's graph
cells are appended.  For odd m the slot lines are odd, and the splice at
hair position p costs the Koszul sign worked out in _attach_graph.  The
bracket is the graded commutator of star.

The segment (single edge, both ends hairs, no internal vertex) is the
extra generator of the bivalent complexes when m = n mod 2.  It has no
internal vertices, so attaching onto it gives zero; it composes onto
other graphs through the same attachment rule with its two ends in the
roles of hairs (see _attach_segment).  At even m the two ends make a
doubled attachment site adding one hair to each vertex of the other
factor; at odd m their relative sign depends on that factor's hair
parity.  The segment is closed and [segment, segment] = 0.

All sign and coefficient choices above are pinned by the test battery:
d^2 = 0 at both valence floors, the graded Jacobi identity and the Leibniz
rule across parities of (m, n), the Maurer-Cartan equations for the
segment and the odd-star series, squared twisted differentials, and the
comparison maps from the non-hairy complex.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .gc import _split_terms, unit
from .graphs import (SEGMENT, Combo, Graph, ParityContext, combo_add,
                     combo_scale, combo_sum, normalize)


class WrongCodimension(ValueError):
    """A Maurer-Cartan family was requested in a context with the wrong m."""


class NotMaurerCartan(ValueError):
    """Twisting was requested at an element that fails the MC equation."""


def degree_hgc(ctx: ParityContext, g: Graph) -> int:
    if not ctx.hairy:
        raise ValueError("degree_hgc needs a hairy context")
    n, m = ctx.n, ctx.m
    if g.segment:
        return n - m - 1
    return ((n - 1) * len(g.edges) - n * g.nv
            + (n - m - 1) * sum(g.hairs) + m)


def weight_hgc(g: Graph) -> int:
    """Loop order plus hair count minus one (edges + hairs - vertices).

    Additive under the bracket, preserved by the differential, and >= 1
    on every generator with a hair, so the hairy complexes are weight
    graded dg Lie algebras in the sense of the mclie module.
    """
    return g.loop_order + g.n_hairs - 1


def _hair_list(g: Graph) -> list[tuple]:
    """Hair ids (vertex, index) in standard order."""
    return [(v, j) for v in range(g.nv) for j in range(g.hairs[v])]


def _hfact(g: Graph) -> int:
    """The divided-power normalizer prod_v hairs(v)!."""
    out = 1
    for h in g.hairs:
        out *= math.factorial(h)
    return out


def _attach_graph(ctx: ParityContext, alpha: Graph, beta: Graph) -> Combo:
    """Sum over hairs a of alpha and vertices w of beta of the attachment.

    Cell layout: alpha's cells with the attaching hair's edge cell mutated
    to an internal edge in place and its slot cell replaced by beta's slot
    block, then beta's graph cells.  The prefactor is the Koszul cost of
    pulling beta's slot block out of the tensor ordering into the consumed
    slot's position: past beta's own graph cells and past the later slot
    lines of alpha (odd lines only: slots for odd m, vertices for odd n,
    edge and hair-edge cells for even n).  Pinned by the graded Jacobi
    identity across all parities of (m, n).
    """
    la = alpha.nv
    m, n = ctx.m, ctx.n
    ahairs = _hair_list(alpha)
    bhairs = _hair_list(beta)
    hb, kb = len(bhairs), len(beta.edges)
    block = hb * ((hb + kb) if n % 2 == 0 else beta.nv)
    acc: Combo = {}
    for pos, a in enumerate(ahairs):
        pref = Fraction(-1) ** (m * (pos * (hb + 1) + block))
        for w in range(beta.nv):
            cells: list[tuple] = [("v", i) for i in range(la)]
            cells.extend(("e", x, y) for x, y in alpha.edges)
            for hid in ahairs:
                if hid == a:
                    cells.append(("e", a[0], la + w))
                else:
                    cells.append(("he", hid[0], ("a", hid)))
            for hid in ahairs:
                if hid == a:
                    # beta's slot block takes the consumed slot's position
                    cells.extend(("hs", ("b", h)) for h in bhairs)
                else:
                    cells.append(("hs", ("a", hid)))
            cells.extend(("v", la + j) for j in range(beta.nv))
            cells.extend(("e", la + x, la + y) for x, y in beta.edges)
            cells.extend(("he", la + h[0], ("b", h)) for h in bhairs)
            res = normalize(ctx, la + beta.nv, cells, pref)
            if res is not None:
                combo_add(acc, res[0], res[1])
    return acc


def _attach_segment(ctx: ParityContext, beta: Graph) -> Combo:
    """The segment composed onto beta: the same attachment rule as
    _attach_graph with the segment's two ends in the roles of hairs at
    positions 0 and 1.  The consumed end's slot is replaced by beta's
    slot block, the segment's edge becomes the hair edge of a new hair
    on the target vertex w, and the surviving end becomes that hair's
    slot; the position prefactor is _attach_graph's, specialized.  At
    even m both ends contribute equally (the doubled attachment site);
    at odd m their relative sign depends on beta's hair parity, which is
    what the Jacobi identity with a segment factor requires."""
    bhairs = _hair_list(beta)
    bslots = [("hs", ("b", h)) for h in bhairs]
    rest = ([("v", j) for j in range(beta.nv)]
            + [("e", x, y) for x, y in beta.edges]
            + [("he", h[0], ("b", h)) for h in bhairs])
    hb, kb = len(bhairs), len(beta.edges)
    block = hb * ((hb + kb) if ctx.n % 2 == 0 else beta.nv)
    acc: Combo = {}
    for w in range(beta.nv):
        for pos, cells in (
            # attach the first end: its slot position takes beta's block,
            # the second end survives in place
            (0, [("he", w, "end")] + bslots + [("hs", "end")] + rest),
            # attach the second end: the first end survives in place
            (1, [("he", w, "end"), ("hs", "end")] + bslots + rest),
        ):
            pref = Fraction(-1) ** (ctx.m * (pos * (hb + 1) + block))
            res = normalize(ctx, beta.nv, cells, pref)
            if res is not None:
                combo_add(acc, res[0], res[1])
    return acc


def subdivide_hair(ctx: ParityContext, g: Graph, a: tuple,
                   coeff=Fraction(1)) -> Combo:
    """Replace the hair a at vertex u by an edge u -- x with the hair
    moved to the new vertex x.  The cell layout matches the vertex-splitting
    differential's own term for "split u, hair alone on the new vertex", so
    the two produce identical signs."""
    x = g.nv
    cells: list[tuple] = [("v", x), ("e", a[0], x)]
    for cell in g.standard_cells():
        if cell[0] == "he" and cell[2] == a:
            cells.append(("he", x, a))
        else:
            cells.append(cell)
    res = normalize(ctx, x + 1, cells, coeff)
    return {} if res is None else {res[0]: res[1]}


def add_hair(ctx: ParityContext, g: Graph, w: int, coeff=Fraction(1)) -> Combo:
    """The graph g with one extra hair on vertex w (new cells in front)."""
    cells: list[tuple] = [("he", w, "new"), ("hs", "new")]
    cells.extend(g.standard_cells())
    res = normalize(ctx, g.nv, cells, coeff)
    return {} if res is None else {res[0]: res[1]}


def diff_hgc(ctx: ParityContext, arg) -> Combo:
    """The hairy differential (see the module docstring for conventions).

    Minus vertex splitting within the valence floor, plus, at the bivalent
    floor only, -2 times each hair subdivision (at the trivalent floor the
    subdivided vertex would be bivalent).  The segment is closed.
    """
    if not ctx.hairy:
        raise ValueError("diff_hgc needs a hairy context")
    combo = unit(arg) if isinstance(arg, Graph) else arg
    acc: Combo = {}
    for g, c in combo.items():
        if g.segment:
            continue
        raw = _split_terms(ctx, g, ctx.min_valence - 1)
        if ctx.min_valence == 2:
            for a in _hair_list(g):
                for h, w in subdivide_hair(ctx, g, a, Fraction(-2)).items():
                    combo_add(raw, h, w)
        fg = _hfact(g)
        for h, w in raw.items():
            combo_add(acc, h, -c * w * Fraction(_hfact(h), fg))
    return acc


def star(ctx: ParityContext, alpha, beta) -> Combo:
    """The hairy composition product (bilinear), global factor 2(-1)^n."""
    ca = unit(alpha) if isinstance(alpha, Graph) else alpha
    cb = unit(beta) if isinstance(beta, Graph) else beta
    sigma = 2 * Fraction(-1) ** ctx.n
    acc: Combo = {}
    for ga, wa in ca.items():
        for gb, wb in cb.items():
            c = sigma * wa * wb
            if gb.segment:
                # no internal vertices to attach to
                continue
            if ga.segment:
                den = _hfact(gb)
                for h, w in _attach_segment(ctx, gb).items():
                    combo_add(acc, h, c * w * Fraction(_hfact(h), den))
                continue
            den = _hfact(ga) * _hfact(gb)
            for h, w in _attach_graph(ctx, ga, gb).items():
                combo_add(acc, h, c * w * Fraction(_hfact(h), den))
    return acc


def bracket_hgc(ctx: ParityContext, alpha, beta) -> Combo:
    """The graded commutator of star."""
    ca = unit(alpha) if isinstance(alpha, Graph) else alpha
    cb = unit(beta) if isinstance(beta, Graph) else beta
    acc: Combo = {}
    for ga, wa in ca.items():
        for gb, wb in cb.items():
            sign = Fraction(-1) ** (degree_hgc(ctx, ga) * degree_hgc(ctx, gb))
            for g, w in star(ctx, ga, gb).items():
                combo_add(acc, g, w * wa * wb)
            for g, w in star(ctx, gb, ga).items():
                combo_add(acc, g, -sign * w * wa * wb)
    return acc


# --- comparison maps ---


def attach_one_hair(ctx: ParityContext, arg) -> Combo:
    """gamma -> sum over vertices of gamma with one extra hair.

    For m = n this is a chain map from the non-hairy complex on the nose,
    and composing with [line_mc(1), -] still gives d of the image since
    the two single-hair terms at one vertex carry opposite slot signs.
    """
    combo = unit(arg) if isinstance(arg, Graph) else arg
    acc: Combo = {}
    for g, c in combo.items():
        for w in range(g.nv):
            for h, v in add_hair(ctx, g, w, c).items():
                combo_add(acc, h, v)
    return acc


def attach_odd_hairs(ctx: ParityContext, arg, cutoff: int = 7) -> Combo:
    """gamma -> sum over odd multisets of vertices, weighted by (1/4)^k
    for 2k+1 hairs, up to the hair-count cutoff (the m = n-1 analogue of
    attach_one_hair, matching the odd-star twist)."""
    combo = unit(arg) if isinstance(arg, Graph) else arg
    acc: Combo = {}
    for g, c in combo.items():
        k = 0
        while 2 * k + 1 <= cutoff:
            coeff = c * Fraction(1, 4) ** k
            for targets in itertools.combinations_with_replacement(
                    range(g.nv), 2 * k + 1):
                cells = list(g.standard_cells())
                for t, w in enumerate(targets):
                    cells = [("he", w, ("new", t)), ("hs", ("new", t))] + cells
                res = normalize(ctx, g.nv, cells, coeff)
                if res is not None:
                    combo_add(acc, res[0], res[1])
            k += 1
    return acc


# --- Maurer-Cartan elements and twisting ---


def star_graph(h: int) -> Graph:
    """One vertex with h hairs."""
    return Graph.make(1, [], [h])


def line_mc(ctx: ParityContext, lam=1) -> Combo:
    """lambda times the segment; Maurer-Cartan in the m = n complexes."""
    if ctx.m != ctx.n:
        raise WrongCodimension(f"the segment family needs m = n, got m={ctx.m}")
    if lam == 0:
        return {}
    return {SEGMENT: Fraction(lam)}


def tripod_mc(ctx: ParityContext, lam=1, cutoff: int = 7) -> Combo:
    """The odd-star series sum_k lam^k (star with 2k+1 hairs), k >= 1;
    Maurer-Cartan in the trivalent m = n - 1 complexes.

    The unit coefficients are a fact about the normalization, not a
    choice: in the divided-power basis the recursion forced by the MC
    equation, 2 c_K = sigma sum c_j c_k over j + k = K, has the geometric
    solution c_k = lam^k exactly when sigma = 2(-1)^n and d carries the
    global minus sign.  Both are fixed accordingly (the sign of sigma is
    only observable here, on the m = n - 1 family).
    """
    if ctx.m != ctx.n - 1:
        raise WrongCodimension(f"the odd-star family needs m = n-1, got m={ctx.m}")
    acc: Combo = {}
    k = 1
    while 2 * k + 1 <= cutoff:
        combo_add(acc, star_graph(2 * k + 1), Fraction(lam) ** k)
        k += 1
    return acc


def tripod_prime(ctx: ParityContext, cutoff: int = 7) -> Combo:
    """The companion series sum_k (2k+1) (star with 2k+1 hairs), k >= 1,
    exposed for comparison only: it is not Maurer-Cartan (the h=5 residue
    is 2[Y,Y]), and nothing here claims otherwise."""
    if ctx.m != ctx.n - 1:
        raise WrongCodimension(f"the odd-star family needs m = n-1, got m={ctx.m}")
    acc: Combo = {}
    k = 1
    while 2 * k + 1 <= cutoff:
        combo_add(acc, star_graph(2 * k + 1), Fraction(2 * k + 1))
        k += 1
    return acc


def mc_check(ctx: ParityContext, alpha: Combo,
             cutoff: int = 7) -> dict[int, Combo]:
    """The Maurer-Cartan residue d(alpha) + [alpha, alpha]/2, split by
    hair count and truncated to the cutoff; empty iff alpha is MC there.

    The residues within the cutoff are complete even for series alpha,
    since neither d nor the bracket lowers hair counts.  Candidates must
    sit in degree -1.
    """
    for g in alpha:
        d = degree_hgc(ctx, g)
        if d != -1:
            raise ValueError("Maurer-Cartan elements live in degree -1; "
                             f"{g.encode()} has degree {d}")
    full = combo_sum(diff_hgc(ctx, alpha),
                     combo_scale(bracket_hgc(ctx, alpha, alpha),
                                 Fraction(1, 2)))
    residues: dict[int, Combo] = {}
    for g, c in full.items():
        if g.n_hairs <= cutoff:
            combo_add(residues.setdefault(g.n_hairs, {}), g, c)
    return {h: combo for h, combo in residues.items() if combo}


def is_mc(ctx: ParityContext, alpha: Combo, cutoff: int = 7) -> bool:
    return not mc_check(ctx, alpha, cutoff)


def twist_diff(ctx: ParityContext, alpha: Combo, cutoff: int = 7):
    """The twisted differential d + [alpha, -], truncated to the hair cutoff.

    Terms with more than cutoff hairs are dropped; the span of graphs
    within the cutoff is a quotient complex since both d and [alpha, -]
    never lower the hair count.
    """
    if not is_mc(ctx, alpha, cutoff):
        raise NotMaurerCartan("alpha fails the Maurer-Cartan equation "
                              f"within {cutoff} hairs")

    def d_tw(arg) -> Combo:
        combo = unit(arg) if isinstance(arg, Graph) else arg
        out = combo_sum(diff_hgc(ctx, combo), bracket_hgc(ctx, alpha, combo))
        return {g: c for g, c in out.items() if g.n_hairs <= cutoff}

    return d_tw
