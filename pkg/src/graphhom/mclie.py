"""Weight-graded dg Lie algebras in finite windows.

A complete weight-graded dg Lie algebra is a product L = prod_{w >= 1} L_w
with a weight-preserving differential and a weight-additive bracket.  All
computations here happen in the finite window of weights at most W: the
window is a quotient of the complete algebra (everything of higher weight
is declared zero), and every operation truncates accordingly.

Twisting by a Maurer-Cartan element alpha replaces the differential with
d + [alpha, -].  The bracket with a weight-s piece of alpha raises weight
by s, so the twisted differential is filtered rather than graded, and a
homology dimension read off inside the window is trustworthy as a statement
about the complete algebra only when no differential component can escape
past W.  berglund_pi reports, per weight w, the graded dimension of the
windowed twisted homology together with that trust flag (w + S <= W for
the largest piece weight S of the twisting element).  The windowed numbers
themselves are exact: they are the homology of the quotient complex.

The hairy graph complexes fit this shape with weight = loop order plus
hairs minus one (equivalently edges plus hairs minus vertices), which the
differential preserves and the bracket adds; hairy_lie builds that
instance on top of the block enumeration.

Elements are plain dicts mapping basis labels to Fractions, like the graph
combinations elsewhere in this package; the algebra object carries the
label-level callables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Hashable

from .exact import SparseMatrix, homology_dim, rank
from .graphs import SEGMENT, ParityContext, combo_add, enumerate_graphs
from .hgc import (NotMaurerCartan, bracket_hgc, degree_hgc, diff_hgc,
                  weight_hgc)
from .homology import vertices_at

Combo = dict


@dataclass(frozen=True)
class WeightGradedDgLie:
    """A finite weight window of a complete weight-graded dg Lie algebra.

    `basis(w, d)` lists the labels of weight w and degree d; `diff` and
    `bracket` act on labels and return label combinations, not yet
    truncated (the window operations below truncate).  `twist_steps`
    records the piece weights of any twisting already applied, so that
    trust windows compose.
    """
    W: int
    weight: Callable[[Hashable], int]
    degree: Callable[[Hashable], int]
    diff: Callable[[Hashable], Combo]
    bracket: Callable[[Hashable, Hashable], Combo]
    basis: Callable[[int, int], list]
    twist_steps: tuple[int, ...] = ()


def truncate(L: WeightGradedDgLie, x: Combo) -> Combo:
    """Drop the components beyond the weight window."""
    return {lab: c for lab, c in x.items() if L.weight(lab) <= L.W}


def apply_diff(L: WeightGradedDgLie, x: Combo) -> Combo:
    acc: Combo = {}
    for lab, c in x.items():
        for out, w in L.diff(lab).items():
            combo_add(acc, out, w * c)
    return truncate(L, acc)


def apply_bracket(L: WeightGradedDgLie, x: Combo, y: Combo) -> Combo:
    acc: Combo = {}
    for la, ca in x.items():
        for lb, cb in y.items():
            if L.weight(la) + L.weight(lb) > L.W:
                continue
            for out, w in L.bracket(la, lb).items():
                combo_add(acc, out, w * ca * cb)
    return truncate(L, acc)


def is_mc(L: WeightGradedDgLie, alpha: Combo) -> bool:
    """Whether d(alpha) + [alpha, alpha]/2 vanishes in weights <= W."""
    for lab in alpha:
        if L.degree(lab) != -1:
            raise ValueError("Maurer-Cartan elements live in degree -1; "
                             f"{lab!r} has degree {L.degree(lab)}")
        if L.weight(lab) > L.W:
            raise ValueError(f"{lab!r} lies beyond the weight window")
    res = apply_diff(L, alpha)
    half = Fraction(1, 2)
    for out, w in apply_bracket(L, alpha, alpha).items():
        combo_add(res, out, half * w)
    return not res


def twist(L: WeightGradedDgLie, alpha: Combo) -> WeightGradedDgLie:
    """The same window with differential d + [alpha, -].

    The new differential is filtered: each weight-s piece of alpha raises
    weight by s.  Twisting again by -alpha restores the old differential.
    """
    if not is_mc(L, alpha):
        raise NotMaurerCartan(
            "twisting needs a Maurer-Cartan element within the window")
    old = L.diff

    def twisted(lab) -> Combo:
        acc = dict(old(lab))
        for la, ca in alpha.items():
            for out, w in L.bracket(la, lab).items():
                combo_add(acc, out, w * ca)
        return acc

    steps = set(L.twist_steps) | {L.weight(lab) for lab in alpha}
    return replace(L, diff=twisted, twist_steps=tuple(sorted(steps)))


# -- Berglund dimensions ------------------------------------------------------

@dataclass(frozen=True)
class PiReport:
    """dim H_{k-1} of a twisted window, graded by weight.

    `total` is the exact dimension in the window; `by_weight[w]` are the
    graded pieces of the induced weight filtration, and `complete[w]`
    says whether the twisting series could not push weight w past the
    window, i.e. whether the number is a statement about the complete
    algebra rather than the window alone.
    """
    k: int
    total: int
    by_weight: dict[int, int]
    complete: dict[int, bool]

    def __int__(self) -> int:
        return self.total


def _window_basis(L: WeightGradedDgLie, d: int) -> list[tuple[int, Hashable]]:
    out = []
    for w in range(1, L.W + 1):
        out.extend((w, lab) for lab in L.basis(w, d))
    return out


def _window_matrix(L: WeightGradedDgLie, dom, cod) -> SparseMatrix:
    index = {lab: i for i, (_, lab) in enumerate(cod)}
    mat = SparseMatrix(len(cod), len(dom))
    for j, (_, lab) in enumerate(dom):
        for out, c in truncate(L, L.diff(lab)).items():
            i = index.get(out)
            if i is None:
                raise RuntimeError(f"differential escapes the window basis "
                                   f"at {out!r}")
            mat[i, j] = c
    return mat


def _suffix_rank(mat: SparseMatrix, first_col: int, **rank_kwargs) -> int:
    sub = SparseMatrix(mat.nrows, mat.ncols - first_col)
    for (i, j), c in mat.entries.items():
        if j >= first_col:
            sub[i, j - first_col] = c
    return rank(sub, **rank_kwargs)


def _sum_rank(mat: SparseMatrix, unit_rows: list[int],
              **rank_kwargs) -> int:
    """rank of [mat | unit columns at the given row positions]."""
    aug = SparseMatrix(mat.nrows, mat.ncols + len(unit_rows))
    for (i, j), c in mat.entries.items():
        aug[i, j] = c
    for t, i in enumerate(unit_rows):
        aug[i, mat.ncols + t] = Fraction(1)
    return rank(aug, **rank_kwargs)


def berglund_pi(L: WeightGradedDgLie, alpha: Combo, k: int,
                **rank_kwargs) -> PiReport:
    """Homotopy-group dimension dim H_{k-1} of the window twisted by alpha.

    The Berglund correspondence identifies pi_k of the Maurer-Cartan
    nerve based at alpha with H_{k-1} of the twisted algebra, for k >= 1.
    The report carries the weight-graded pieces of the windowed answer
    and their trust flags; with alpha = 0 everything is flagged complete
    and the total is the plain homology dimension.
    """
    if k < 1:
        raise ValueError("homotopy groups start at k = 1")
    Lt = twist(L, alpha)
    d = k - 1
    dom = _window_basis(Lt, d)
    below = _window_basis(Lt, d - 1)
    above = _window_basis(Lt, d + 1)
    d_out = _window_matrix(Lt, dom, below)
    d_in = _window_matrix(Lt, above, dom)
    total = homology_dim(d_out, d_in, **rank_kwargs)

    # induced weight filtration: the span of weights >= v is a subcomplex
    # (the basis is weight-ascending, so it is a column suffix), and
    # f_v = dim(Z cap F_v) - dim(B cap F_v) filters the homology
    rank_in = rank(d_in, **rank_kwargs)
    f: dict[int, int] = {}
    for v in range(1, L.W + 2):
        first = next((i for i, (w, _) in enumerate(dom) if w >= v), len(dom))
        n_suffix = len(dom) - first
        cycles = n_suffix - _suffix_rank(d_out, first, **rank_kwargs)
        spanned = _sum_rank(d_in, list(range(first, len(dom))),
                            **rank_kwargs)
        boundaries = rank_in + n_suffix - spanned
        f[v] = cycles - boundaries
    by_weight = {w: f[w] - f[w + 1] for w in range(1, L.W + 1)}
    if sum(by_weight.values()) != total:
        raise RuntimeError("weight filtration does not add up; rank bug")
    S = max(Lt.twist_steps, default=0)
    complete = {w: w + S <= L.W for w in by_weight}
    return PiReport(k, total, by_weight, complete)


# -- Baker-Campbell-Hausdorff -------------------------------------------------

def _dynkin_blocks(max_letters: int):
    """Sequences of exponent pairs (r, s) != (0, 0), at most max_letters."""
    def rec(left: int):
        yield []
        for r in range(left + 1):
            for s in range(left - r + 1):
                if r + s == 0:
                    continue
                for rest in rec(left - r - s):
                    yield [(r, s)] + rest
    for seq in rec(max_letters):
        if seq:
            yield seq


def bch(L: WeightGradedDgLie, x: Combo, y: Combo,
        W: int | None = None) -> Combo:
    """The Baker-Campbell-Hausdorff product log(e^x e^y), Dynkin form.

    x and y must sit in degree 0; weights are at least 1, so the series
    breaks off at W letters (defaulting to the algebra's window).
    """
    for lab in list(x) + list(y):
        if L.degree(lab) != 0:
            raise ValueError("bch needs degree-0 arguments")
    cap = L.W if W is None else min(W, L.W)
    Lw = replace(L, W=cap)
    acc: Combo = {}
    for seq in _dynkin_blocks(cap):
        letters: list[Combo] = []
        for r, s in seq:
            letters.extend([x] * r)
            letters.extend([y] * s)
        term = letters[-1]
        for elem in reversed(letters[:-1]):
            if not term:
                break
            term = apply_bracket(Lw, elem, term)
        if not term:
            continue
        n = len(seq)
        t = len(letters)
        denom = n * t
        for r, s in seq:
            denom *= math.factorial(r) * math.factorial(s)
        coeff = Fraction((-1) ** (n - 1), denom)
        for lab, c in term.items():
            combo_add(acc, lab, coeff * c)
    return acc


# -- the hairy instance -------------------------------------------------------

def hairy_lie(ctx: ParityContext, W: int,
              loops=None) -> WeightGradedDgLie:
    """The hairy graph complex as a weight-graded dg Lie window.

    Weight is loop order plus hairs minus one; the segment carries weight
    one (it counts as a two-hair object here, regardless of the block
    bookkeeping).  `loops` restricts to a set of loop orders, which is
    bracket-closed only for {0}, so restricted instances are meant for
    subcomplex computations like the loop-order-0 twist.
    """
    if not ctx.hairy:
        raise ValueError("hairy_lie needs a hairy context")
    kind = "HGC" if ctx.min_valence == 3 else "HGC2"
    n, m = ctx.n, ctx.m
    if loops is None:
        allowed = None
    elif isinstance(loops, int):
        allowed = {loops}
    else:
        allowed = set(loops)

    def basis(w: int, d: int) -> list:
        out = []
        if (w == 1 and d == n - m - 1 and (n - m) % 2 == 0
                and (allowed is None or 0 in allowed)):
            out.append(SEGMENT)
        for g in range(0, w + 1):
            if allowed is not None and g not in allowed:
                continue
            h = w + 1 - g
            l = vertices_at(kind, ctx, g, h, d)
            if l is not None:
                out.extend(enumerate_graphs(ctx, l, g + l - 1, h))
        return out

    return WeightGradedDgLie(
        W=W,
        weight=weight_hgc,
        degree=lambda gph: degree_hgc(ctx, gph),
        diff=lambda gph: diff_hgc(ctx, gph),
        bracket=lambda a, b: bracket_hgc(ctx, a, b),
        basis=basis,
    )
