"""Graphs with orientation data for Kontsevich-style graph complexes.

A generator is a connected multigraph with `nv` internal vertices, a sorted
tuple of undirected internal edges (tadpoles allowed as (v, v)) and a tuple
of per-vertex hair counts.  The distinguished `SEGMENT` generator (a single
edge whose both ends are hairs, no internal vertex) is special-cased
throughout.

Orientation bookkeeping uses an explicit ordered list of *cells*:

    ('v', i)        vertex line, odd iff n is odd
    ('e', a, b)     internal edge line, odd iff n is even; directed iff n odd
    ('he', v, hid)  the edge part of a hair at vertex v, odd iff n is even
    ('hs', hid)     the hair-slot line, odd iff m is odd

A term of the complex is a cell list together with a rational coefficient;
its normal form is the graph with cells in a standard order (vertices
ascending, then sorted edges, then hairs by vertex) and the sign of the
permutation restricted to odd cells.  All sign conventions downstream
(differential, brackets, insertions) reduce to cell-list bookkeeping here.

Two hairs on one vertex swap with sign (-1)^{[n even] + [m odd]}, so they
kill the graph exactly when n = m mod 2; a tadpole is killed for odd n by
its edge reversal; a double edge is killed for even n.  These local rules
are applied both in `normalize` and in `canonicalize`.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class ParityContext:
    """Complex parameters: n (and m for hairy), valence policy, tadpole policy."""

    n: int
    m: int | None = None
    min_valence: int = 3
    allow_tadpoles: bool = True

    def __post_init__(self):
        if self.min_valence not in (2, 3):
            raise ValueError("min_valence must be 2 or 3")
        if self.m is not None and self.m < 0:
            raise ValueError("m must be nonnegative")

    @property
    def verts_odd(self) -> bool:
        return self.n % 2 == 1

    @property
    def edges_odd(self) -> bool:
        return self.n % 2 == 0

    @property
    def directed_edges(self) -> bool:
        return self.n % 2 == 1

    @property
    def slots_odd(self) -> bool:
        if self.m is None:
            return False
        return self.m % 2 == 1

    @property
    def hairy(self) -> bool:
        return self.m is not None

    @property
    def hairs_odd(self) -> bool:
        """Sign of swapping two whole hairs (edge part and slot part together)."""
        if self.m is None:
            return False
        return (self.n - self.m) % 2 == 0

    def cell_odd(self, cell: tuple) -> bool:
        kind = cell[0]
        if kind == "v":
            return self.verts_odd
        if kind in ("e", "he"):
            return self.edges_odd
        if kind == "hs":
            return self.slots_odd
        raise ValueError(f"unknown cell {cell!r}")


@dataclass(frozen=True)
class Graph:
    """A generator: nv vertices 0..nv-1, sorted edge tuple, hair counts."""

    nv: int
    edges: tuple[tuple[int, int], ...]
    hairs: tuple[int, ...]
    segment: bool = False

    @staticmethod
    def make(nv: int, edges, hairs=None) -> "Graph":
        es = tuple(sorted((min(u, v), max(u, v)) for u, v in edges))
        hs = tuple(hairs) if hairs is not None else (0,) * nv
        if len(hs) != nv:
            raise ValueError("hair tuple length must equal vertex count")
        for u, v in es:
            if not (0 <= u < nv and 0 <= v < nv):
                raise ValueError("edge endpoint out of range")
        return Graph(nv, es, hs)

    @property
    def n_edges(self) -> int:
        return 1 if self.segment else len(self.edges)

    @property
    def n_hairs(self) -> int:
        # the segment's both ends are hairs
        return 2 if self.segment else sum(self.hairs)

    @property
    def loop_order(self) -> int:
        if self.segment:
            return 0
        return len(self.edges) - self.nv + 1

    def valence(self, v: int) -> int:
        d = self.hairs[v]
        for a, b in self.edges:
            if a == v:
                d += 1
            if b == v:
                d += 1
        return d

    def is_connected(self) -> bool:
        if self.segment:
            return True
        if self.nv == 0:
            return False
        parent = list(range(self.nv))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        return len({find(v) for v in range(self.nv)}) == 1

    def encode(self) -> str:
        if self.segment:
            return "SEG"
        h = ",".join(str(c) for c in self.hairs)
        e = ",".join(f"{a}-{b}" for a, b in self.edges)
        return f"G l={self.nv} h={h} e={e}"

    @staticmethod
    def decode(text: str) -> "Graph":
        text = text.strip()
        if text == "SEG":
            return SEGMENT
        parts = text.split()
        if len(parts) != 4 or parts[0] != "G":
            raise ValueError(f"bad graph encoding: {text!r}")
        nv = int(parts[1].removeprefix("l="))
        hs_s = parts[2].removeprefix("h=")
        es_s = parts[3].removeprefix("e=")
        hairs = tuple(int(x) for x in hs_s.split(",")) if hs_s else ()
        edges = []
        if es_s:
            for tok in es_s.split(","):
                a, b = tok.split("-")
                edges.append((int(a), int(b)))
        return Graph.make(nv, edges, hairs)

    def standard_cells(self) -> list[tuple]:
        """The cell list in standard order; hair ids are (vertex, index)."""
        if self.segment:
            return [("e", ("p",), ("q",)), ("hs", ("p",)), ("hs", ("q",))]
        cells: list[tuple] = [("v", i) for i in range(self.nv)]
        cells.extend(("e", a, b) for a, b in self.edges)
        hids = [(v, j) for v in range(self.nv) for j in range(self.hairs[v])]
        cells.extend(("he", v, hid) for (v, j), hid in zip(hids, hids))
        cells.extend(("hs", hid) for hid in hids)
        return cells


SEGMENT = Graph(0, (), (), segment=True)

Combo = dict  # Graph -> Fraction; zero coefficients are never stored


def combo_add(acc: Combo, g: Graph, c: Fraction) -> None:
    s = acc.get(g, Fraction(0)) + c
    if s == 0:
        acc.pop(g, None)
    else:
        acc[g] = s


def combo_scale(combo: Combo, c) -> Combo:
    c = Fraction(c)
    if c == 0:
        return {}
    return {g: v * c for g, v in combo.items()}


def combo_sum(*combos: Combo) -> Combo:
    acc: Combo = {}
    for combo in combos:
        for g, c in combo.items():
            combo_add(acc, g, c)
    return acc


def normalize(ctx: ParityContext, nv: int, cells: list[tuple],
              coeff: Fraction = Fraction(1)) -> tuple[Graph, Fraction] | None:
    """Bring a raw cell list to (canonical Graph, signed coefficient).

    Returns None when the term is zero (tadpole for odd n, repeated edge for
    even n, two hairs on a vertex when hairs are odd, or an orientation-
    reversing automorphism found during canonicalization).
    """
    sign = 1
    edges: list[tuple[int, int]] = []
    hair_vertex: dict = {}      # hid -> vertex
    he_order: list = []         # hids in he-cell order
    hs_seen: list = []
    seen_v = []
    for cell in cells:
        if cell[0] == "e":
            a, b = cell[1], cell[2]
            if a == b:
                if ctx.directed_edges:
                    return None
            elif a > b:
                a, b = b, a
                if ctx.directed_edges:
                    sign = -sign
            edges.append((a, b))
        elif cell[0] == "v":
            seen_v.append(cell[1])
        elif cell[0] == "he":
            hair_vertex[cell[2]] = cell[1]
            he_order.append(cell[2])
        elif cell[0] == "hs":
            hs_seen.append(cell[1])
        else:
            raise ValueError(f"unknown cell {cell!r}")
    if sorted(seen_v) != list(range(nv)):
        raise ValueError("vertex cells must enumerate 0..nv-1 exactly once")
    if len(he_order) != len(hair_vertex) or \
            sorted(hs_seen, key=repr) != sorted(hair_vertex, key=repr):
        raise ValueError("he and hs cells must pair up one to one")

    sorted_edges = sorted(edges)
    if ctx.edges_odd:
        for e1, e2 in zip(sorted_edges, sorted_edges[1:]):
            if e1 == e2:
                return None
    hairs = [0] * nv
    for hid, v in hair_vertex.items():
        hairs[v] += 1
    if ctx.hairs_odd and any(c >= 2 for c in hairs):
        return None

    # standard ranks: block 0 vertices by label, block 1 edges sorted,
    # block 2 hair edges by (vertex, appearance), block 3 slots in the same
    # hair order as block 2
    edge_rank: dict[tuple[int, int], list[int]] = {}
    for idx, e in enumerate(sorted_edges):
        edge_rank.setdefault(e, []).append(idx)
    edge_take = {e: 0 for e in edge_rank}
    hid_key = {}
    per_vertex_count: dict[int, int] = {}
    for hid in sorted(he_order, key=lambda h: hair_vertex[h]):
        v = hair_vertex[hid]
        hid_key[hid] = (v, per_vertex_count.get(v, 0))
        per_vertex_count[v] = per_vertex_count.get(v, 0) + 1
    hid_rank = {hid: i for i, hid in
                enumerate(sorted(hid_key, key=lambda h: hid_key[h]))}

    ranks = []
    for cell in cells:
        if cell[0] == "v":
            if ctx.verts_odd:
                ranks.append((0, cell[1]))
        elif cell[0] == "e":
            e = norm_edge(cell)
            if ctx.edges_odd:
                take = edge_take[e]
                edge_take[e] += 1
                ranks.append((1, edge_rank[e][take], 0))
        elif cell[0] == "he":
            if ctx.edges_odd:
                ranks.append((2, hid_rank[cell[2]], 0))
        elif cell[0] == "hs":
            if ctx.slots_odd:
                ranks.append((3, hid_rank[cell[1]], 0))
    inv = 0
    for i in range(len(ranks)):
        for j in range(i + 1, len(ranks)):
            if ranks[i] > ranks[j]:
                inv += 1
    if inv % 2:
        sign = -sign

    g = Graph(nv, tuple(sorted_edges), tuple(hairs))
    res = canonicalize(ctx, g)
    if res is None:
        return None
    cg, csign = res
    return cg, coeff * sign * csign


def norm_edge(cell: tuple) -> tuple[int, int]:
    a, b = cell[1], cell[2]
    return (a, b) if a <= b else (b, a)


# --- canonical labeling ---


def _refine(colors: dict[int, int], adj: dict[int, dict[int, int]]) -> dict[int, int]:
    nv = len(colors)
    while True:
        sig = {v: (colors[v],
                   tuple(sorted((colors[u], m) for u, m in adj[v].items())))
               for v in colors}
        order = sorted(set(sig.values()))
        ranks = {s: i for i, s in enumerate(order)}
        new = {v: ranks[sig[v]] for v in colors}
        if new == colors:
            return colors
        colors = new


def _leaves(colors: dict[int, int], adj: dict[int, dict[int, int]],
            out: list[dict[int, int]]) -> None:
    cells: dict[int, list[int]] = {}
    for v, c in colors.items():
        cells.setdefault(c, []).append(v)
    target = None
    for c in sorted(cells):
        if len(cells[c]) > 1:
            target = cells[c]
            break
    if target is None:
        out.append(colors)
        return
    for v in sorted(target):
        tweaked = {u: (colors[u], 1 if u == v else 2) for u in colors}
        order = sorted(set(tweaked.values()))
        ranks = {s: i for i, s in enumerate(order)}
        _leaves(_refine({u: ranks[tweaked[u]] for u in colors}, adj), adj, out)


def _perm_parity(perm: list[int]) -> int:
    """Sign of the permutation sending i -> perm[i]."""
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        clen = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign


def _sort_parity(seq: list) -> int:
    """Sign of the (stable) permutation sorting seq; ties contribute nothing."""
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


def _relabel_sign(ctx: ParityContext, g: Graph, sigma: list[int]) -> int:
    sign = 1
    if ctx.verts_odd:
        sign *= _perm_parity(sigma)
    if ctx.directed_edges:
        for a, b in g.edges:
            if sigma[a] > sigma[b]:
                sign = -sign
    if ctx.edges_odd:
        imgs = [tuple(sorted((sigma[a], sigma[b]))) for a, b in g.edges]
        sign *= _sort_parity(imgs)
    if ctx.hairs_odd:
        imgs = [sigma[v] for v in range(g.nv) for _ in range(g.hairs[v])]
        sign *= _sort_parity(imgs)
    return sign


def _relabeled_key(g: Graph, sigma: list[int]):
    edges = tuple(sorted(tuple(sorted((sigma[a], sigma[b]))) for a, b in g.edges))
    hairs = [0] * g.nv
    for v in range(g.nv):
        hairs[sigma[v]] = g.hairs[v]
    return edges, tuple(hairs)


@functools.lru_cache(maxsize=1 << 18)
def canonicalize(ctx: ParityContext, g: Graph) -> tuple[Graph, int] | None:
    """Canonical representative and transport sign, or None if g is zero.

    The input graph with its standard orientation equals `sign` times the
    canonical graph with its standard orientation.  A graph is zero exactly
    when two optimal relabelings disagree in sign (an orientation-reversing
    automorphism), or a local parity rule kills it.
    """
    if g.segment:
        if not ctx.hairy:
            raise ValueError("segment needs a hairy context")
        return (g, 1) if (ctx.n - ctx.m) % 2 == 0 else None
    if ctx.directed_edges and any(a == b for a, b in g.edges):
        return None
    if ctx.edges_odd:
        for e1, e2 in zip(g.edges, g.edges[1:]):
            if e1 == e2:
                return None
    if ctx.hairs_odd and any(c >= 2 for c in g.hairs):
        return None
    if g.nv == 0:
        raise ValueError("empty graph is not a generator")

    adj: dict[int, dict[int, int]] = {v: {} for v in range(g.nv)}
    tad = [0] * g.nv
    for a, b in g.edges:
        if a == b:
            tad[a] += 1
        else:
            adj[a][b] = adj[a].get(b, 0) + 1
            adj[b][a] = adj[b].get(a, 0) + 1

    init = {v: (g.valence(v), g.hairs[v], tad[v]) for v in range(g.nv)}
    order = sorted(set(init.values()))
    ranks = {s: i for i, s in enumerate(order)}
    colors = _refine({v: ranks[init[v]] for v in range(g.nv)}, adj)
    leaves: list[dict[int, int]] = []
    _leaves(colors, adj, leaves)

    best_key = None
    best_sigmas: list[list[int]] = []
    for leaf in leaves:
        sigma = [0] * g.nv
        for v, c in leaf.items():
            sigma[v] = c
        key = _relabeled_key(g, sigma)
        if best_key is None or key < best_key:
            best_key = key
            best_sigmas = [sigma]
        elif key == best_key:
            best_sigmas.append(sigma)

    signs = {_relabel_sign(ctx, g, s) for s in best_sigmas}
    if len(signs) > 1:
        return None
    edges, hairs = best_key
    return Graph(g.nv, edges, hairs), signs.pop()


# --- enumeration ---


def _profiles(total_deg: int, total_hair: int, nparts: int, min_val: int,
              max_pair=None):
    """Non-increasing lists of (edge-degree, hair-count) per vertex."""
    if nparts == 0:
        if total_deg == 0 and total_hair == 0:
            yield []
        return
    cap = max_pair if max_pair is not None else (total_deg, total_hair)
    for d in range(min(total_deg, cap[0]), -1, -1):
        hcap = total_hair if d < cap[0] else min(total_hair, cap[1])
        for h in range(hcap, -1, -1):
            if d + h < min_val:
                continue
            # remaining vertices each need >= min_val items
            if total_deg - d + total_hair - h < min_val * (nparts - 1):
                continue
            for rest in _profiles(total_deg - d, total_hair - h,
                                  nparts - 1, min_val, (d, h)):
                yield [(d, h)] + rest


def _cycle_multigraphs(ctx: ParityContext, nv: int):
    """The connected 2-regular multigraphs on nv vertices, if permitted.

    One isomorphism class exists for each nv: the tadpole, the double
    edge, or the plain cycle; the first two obey the same gates as the
    generic generator.
    """
    if nv == 1:
        if ctx.allow_tadpoles and not ctx.directed_edges:
            return [((0, 0),)]
        return []
    if nv == 2:
        return [] if ctx.edges_odd else [((0, 1), (0, 1))]
    return [tuple(sorted((i, i + 1) if i + 1 < nv else (0, i)
                         for i in range(nv)))]


def _labeled_multigraphs(ctx: ParityContext, degs: list[int]):
    """All edge multisets realizing the degree sequence, as sorted tuples."""
    nv = len(degs)
    max_mult = 1 if ctx.edges_odd else None
    allow_tad = ctx.allow_tadpoles and not ctx.directed_edges

    def rec(i: int, residual: list[int], acc: list[tuple[int, int]]):
        if i == nv:
            if all(r == 0 for r in residual):
                yield tuple(acc)
            return
        r = residual[i]
        later = sum(residual[i + 1:])
        tmax = r // 2 if allow_tad else 0
        if ctx.edges_odd:
            tmax = min(tmax, 1)
        for t in range(tmax, -1, -1):
            need = r - 2 * t
            if need > later:
                continue

            def dist(j: int, left: int, acc2: list[tuple[int, int]]):
                if left == 0:
                    yield from rec(i + 1, residual2, acc + acc2)
                    return
                if j == nv:
                    return
                top = min(left, residual2[j])
                if max_mult is not None:
                    top = min(top, max_mult)
                cap = max_mult if max_mult is not None else left
                if sum(min(residual2[x], cap) for x in range(j, nv)) < left:
                    return
                for mm in range(top, -1, -1):
                    residual2[j] -= mm
                    yield from dist(j + 1, left - mm,
                                    acc2 + [(i, j)] * mm)
                    residual2[j] += mm

            residual2 = list(residual)
            residual2[i] = 0
            yield from dist(i + 1, need, [(i, i)] * t)

    yield from rec(0, list(degs), [])


def enumerate_graphs(ctx: ParityContext, nv: int, n_edges: int,
                     n_hairs: int = 0) -> list[Graph]:
    """All nonzero generators with the given vertex/edge/hair counts.

    The result is deduplicated up to isomorphism (canonical forms), excludes
    graphs killed by their own symmetry, and is sorted by encoding.  The
    segment is returned for (0, 0, 1) in a hairy context with n = m mod 2.
    """
    if not ctx.hairy and n_hairs:
        raise ValueError("hairs need a hairy context")
    if nv == 0:
        if n_edges == 0 and n_hairs == 1 and ctx.hairy and (ctx.n - ctx.m) % 2 == 0:
            return [SEGMENT]
        return []
    if nv >= 2 and n_edges < nv - 1:
        return []  # cannot be connected

    out: dict[Graph, None] = {}
    for prof in _profiles(2 * n_edges, n_hairs, nv, ctx.min_valence):
        degs = [d for d, _ in prof]
        hairs = tuple(h for _, h in prof)
        if ctx.hairs_odd and any(h >= 2 for h in hairs):
            continue
        if nv >= 2 and any(d == 0 for d in degs):
            continue  # isolated from the internal-edge skeleton
        if not n_hairs and all(d == 2 for d in degs):
            # connected 2-regular means a single cycle; skip the pairing
            # search, which degenerates badly on this profile
            candidates = _cycle_multigraphs(ctx, nv)
        else:
            candidates = _labeled_multigraphs(ctx, degs)
        for edges in candidates:
            g = Graph(nv, edges, hairs)
            if not g.is_connected():
                continue
            res = canonicalize(ctx, g)
            if res is None:
                continue
            out[res[0]] = None
    return sorted(out, key=Graph.encode)
