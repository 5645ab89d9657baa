"""Hairy complexes: degrees, differential, bracket, MC elements, twisting."""

from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from graphhom.gc import diff as diff_gc
from graphhom.gc import unit
from graphhom.graphs import (SEGMENT, Graph, ParityContext, canonicalize,
                             combo_add, enumerate_graphs)
from graphhom.hgc import (NotMaurerCartan, WrongCodimension, attach_odd_hairs,
                          attach_one_hair, bracket_hgc, degree_hgc, diff_hgc,
                          is_mc, line_mc, mc_check, star, star_graph,
                          tripod_mc, tripod_prime, twist_diff, weight_hgc)

TRI = Graph.make(3, [(0, 1), (1, 2), (0, 2)])
K4 = Graph.make(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
Y = star_graph(3)
S5 = star_graph(5)
S7 = star_graph(7)


def hctx(m, n, mv=3):
    return ParityContext(n=n, m=m, min_valence=mv)


def hedgehog(k):
    return Graph.make(k, [(i, (i + 1) % k) for i in range(k)], [1] * k)


def scale(combo, s):
    return {g: v * s for g, v in combo.items()}


def add(*combos):
    out = {}
    for c in combos:
        for g, v in c.items():
            combo_add(out, g, v)
    return out


def sample_pool(ctx, max_nv=3, max_extra=1, max_h=4, segment=True):
    pool = []
    if segment and ctx.m is not None and (ctx.n - ctx.m) % 2 == 0 \
            and ctx.min_valence == 2:
        pool.append(SEGMENT)
    for nv in range(1, max_nv + 1):
        for ne in range(0, nv + max_extra + 1):
            for nh in range(1, max_h + 1):
                pool.extend(enumerate_graphs(ctx, nv, ne, nh))
    return pool


def test_degree_examples():
    # tripod in degree 2(n-m)-3, hedgehogs in degree k(n-m-2)+m
    for m, n in [(1, 2), (2, 3), (3, 4), (2, 4), (2, 5)]:
        assert degree_hgc(hctx(m, n), Y) == 2 * (n - m) - 3
        for k in (3, 4, 5):
            assert degree_hgc(hctx(m, n), hedgehog(k)) == k * (n - m - 2) + m
    # the segment sits in degree n-m-1, so -1 whenever m = n
    assert degree_hgc(hctx(3, 3, 2), SEGMENT) == -1
    assert degree_hgc(hctx(2, 4, 2), SEGMENT) == 1


def test_degree_needs_hairy_context():
    with pytest.raises(ValueError):
        degree_hgc(ParityContext(2), Y)


def test_weight_grading():
    # weight = loops + hairs - 1 is 1 on the segment, additive under the
    # bracket, and preserved by the differential
    assert weight_hgc(SEGMENT) == 1
    assert weight_hgc(Y) == 2
    ctx = hctx(2, 3)
    for a, b in [(Y, S5), (Y, Y), (S5, S5)]:
        for g in bracket_hgc(ctx, a, b):
            assert weight_hgc(g) == weight_hgc(a) + weight_hgc(b)
    ctx = hctx(2, 4, 2)
    for g0 in sample_pool(ctx, segment=False):
        for g in diff_hgc(ctx, g0):
            assert weight_hgc(g) == weight_hgc(g0)


def test_diff_examples():
    # the tripod and the segment are closed in every hosting complex
    for m, n in [(1, 2), (2, 3), (3, 4)]:
        assert not diff_hgc(hctx(m, n, 3), Y)
        assert not diff_hgc(hctx(m, n, 2), Y)
    assert not diff_hgc(hctx(2, 2, 2), SEGMENT)

    # hairy tadpole at (2,4): the dumbbell terms die by duplicate edges and
    # the two pendant splits cancel the hair subdivision, 1 + 1 - 2 = 0
    ctx = hctx(2, 4, 2)
    H1 = Graph.make(1, [(0, 0)], [1])
    assert not diff_hgc(ctx, H1)

    # tadpole - edge - hair vertex: every live term is the subdivided chain
    P = Graph.make(2, [(0, 0), (0, 1)], [0, 1])
    chain = Graph.make(3, [(0, 1), (0, 2), (2, 2)], [0, 1, 0])
    can = canonicalize(ctx, chain)
    assert diff_hgc(ctx, P) == {can[0]: -2 * can[1]}
    assert not diff_hgc(ctx, diff_hgc(ctx, P))


@pytest.mark.parametrize("m,n", [(2, 4), (3, 5), (2, 5), (3, 4), (2, 2),
                                 (2, 3), (1, 3)])
@pytest.mark.parametrize("mv", [2, 3])
def test_d_squared_zero(m, n, mv):
    ctx = hctx(m, n, mv)
    for nv in range(1, 5):
        for ne in range(0, nv + 2):
            for nh in range(0, 5):
                for g in enumerate_graphs(ctx, nv, ne, nh):
                    assert not diff_hgc(ctx, diff_hgc(ctx, g)), \
                        (m, n, mv, g.encode())


def test_diff_lowers_degree_and_preserves_gradings():
    for m, n, mv in [(2, 4, 2), (2, 3, 3), (3, 3, 2)]:
        ctx = hctx(m, n, mv)
        for g in sample_pool(ctx, segment=False):
            d0 = degree_hgc(ctx, g)
            for h in diff_hgc(ctx, g):
                assert degree_hgc(ctx, h) == d0 - 1
                assert h.loop_order == g.loop_order
                assert h.n_hairs == g.n_hairs
                assert h.nv == g.nv + 1


def test_bracket_trivia():
    ctx = hctx(2, 2, 2)
    assert not bracket_hgc(ctx, SEGMENT, SEGMENT)
    assert not bracket_hgc(ctx, Y, {})
    assert not bracket_hgc(ctx, {}, Y)
    # nothing attaches onto the segment: it has no internal vertices
    assert not star(ctx, TRI, SEGMENT)


def test_bracket_antisymmetry():
    for m, n in [(2, 2), (2, 3), (3, 4), (3, 3)]:
        ctx = hctx(m, n, 2)
        pool = sample_pool(ctx, max_nv=2, max_extra=0)
        for a, b in itertools.product(pool[:8], repeat=2):
            s = Fraction(-1) ** (degree_hgc(ctx, a) * degree_hgc(ctx, b))
            assert bracket_hgc(ctx, a, b) == scale(bracket_hgc(ctx, b, a), -s)


def jacobi_defect(ctx, a, b, c):
    da, db = degree_hgc(ctx, a), degree_hgc(ctx, b)
    return add(bracket_hgc(ctx, a, bracket_hgc(ctx, b, c)),
               scale(bracket_hgc(ctx, bracket_hgc(ctx, a, b), c), -1),
               scale(bracket_hgc(ctx, b, bracket_hgc(ctx, a, c)),
                     -Fraction(-1) ** (da * db)))


@pytest.mark.parametrize("m,n", [(2, 2), (1, 2), (2, 3), (3, 3), (2, 4)])
def test_jacobi(m, n):
    ctx = hctx(m, n, 2)
    pool = sample_pool(ctx, max_nv=2, max_extra=0, max_h=3)
    import random
    rng = random.Random(20 * m + n)
    for _ in range(10):
        a, b, c = (rng.choice(pool) for _ in range(3))
        assert not jacobi_defect(ctx, a, b, c), \
            (m, n, a.encode(), b.encode(), c.encode())


def test_jacobi_with_segment_at_odd_m():
    # the segment's two attachment ends carry position signs at odd m;
    # these pairs are exactly the ones that detect a wrong convention
    for m, n in [(3, 3), (1, 1), (1, 3)]:
        ctx = hctx(m, n, 2)
        D01 = Graph.make(2, [(0, 1), (0, 1)], [0, 1])
        D11 = Graph.make(2, [(0, 1), (0, 1)], [1, 1])
        for b, c in itertools.product([D01, D11, SEGMENT], repeat=2):
            assert not jacobi_defect(ctx, SEGMENT, b, c), (m, n)
            assert not jacobi_defect(ctx, b, SEGMENT, c), (m, n)


@pytest.mark.parametrize("m,n,mv", [(2, 2, 2), (2, 3, 3), (3, 3, 2),
                                    (3, 4, 3), (1, 2, 2)])
def test_leibniz(m, n, mv):
    ctx = hctx(m, n, mv)
    pool = sample_pool(ctx, max_nv=2, max_extra=1, max_h=3)
    import random
    rng = random.Random(40 * m + n + mv)
    pairs = [(rng.choice(pool), rng.choice(pool)) for _ in range(8)]
    if SEGMENT in pool:
        pairs += [(SEGMENT, p) for p in pool[:4]]
        pairs += [(p, SEGMENT) for p in pool[:4]]
    for a, b in pairs:
        lhs = diff_hgc(ctx, bracket_hgc(ctx, a, b))
        rhs = add(bracket_hgc(ctx, diff_hgc(ctx, a), b),
                  scale(bracket_hgc(ctx, a, diff_hgc(ctx, b)),
                        Fraction(-1) ** degree_hgc(ctx, a)))
        assert lhs == rhs, (m, n, mv, a.encode(), b.encode())


def test_tripod_bracket_support():
    # [Y, Y] is a single canonical graph: two vertices joined by an edge
    # carrying 2 and 3 hairs (each Y contributes one hair to the glue)
    for m, n, coeff in [(2, 3, -4), (1, 2, 4)]:
        ctx = hctx(m, n)
        yy = bracket_hgc(ctx, Y, Y)
        T23 = Graph.make(2, [(0, 1)], [2, 3])
        can = canonicalize(ctx, T23)
        assert yy == {can[0]: coeff * can[1]}
        # the five-hair star is its primitive: d S5 = -[Y,Y]/2, which is the
        # h=5 component of the Maurer-Cartan equation for the tripod series
        assert diff_hgc(ctx, S5) == scale(yy, Fraction(-1, 2))


def test_line_mc():
    for n in (2, 3):
        ctx = hctx(n, n, 2)
        for lam in (0, 1, 2):
            assert not mc_check(ctx, line_mc(ctx, lam))
    assert line_mc(hctx(2, 2, 2), 0) == {}
    with pytest.raises(WrongCodimension):
        line_mc(hctx(2, 3, 2), 1)


def test_tripod_mc():
    for m, n in [(1, 2), (2, 3), (3, 4)]:
        ctx = hctx(m, n)
        T = tripod_mc(ctx, 1, cutoff=7)
        assert T == {Y: 1, S5: 1, S7: 1}
        assert all(degree_hgc(ctx, g) == -1 for g in T)
        assert not mc_check(ctx, T, cutoff=7)
        assert is_mc(ctx, tripod_mc(ctx, 2, cutoff=7), cutoff=7)
    assert tripod_mc(hctx(2, 3), 0) == {}
    with pytest.raises(WrongCodimension):
        tripod_mc(hctx(2, 2), 1)


def test_tripod_mc_deep():
    # one step past the default cutoff at both vertex parities
    for m, n in [(2, 3), (3, 4)]:
        ctx = hctx(m, n)
        assert not mc_check(ctx, tripod_mc(ctx, 1, cutoff=9), cutoff=9)


def test_tripod_prime_is_not_mc():
    # the companion series sum (2k+1) S_{2k+1} fails the MC equation; the
    # residues follow from d S5 = -[Y,Y]/2 and d S7 = -[Y,S5]:
    #   h=5: 5 dS5 + 9/2 [Y,Y] = 2 [Y,Y],  h=7: 7 dS7 + 15 [Y,S5] = 8 [Y,S5]
    ctx = hctx(2, 3)
    tp = tripod_prime(ctx, cutoff=7)
    assert tp == {Y: 3, S5: 5, S7: 7}
    res = mc_check(ctx, tp, cutoff=7)
    assert res == {5: scale(bracket_hgc(ctx, Y, Y), 2),
                   7: scale(bracket_hgc(ctx, Y, S5), 8)}


def test_mc_check_rejects_wrong_degree():
    # a lone tripod in HGC_{2,5} sits in degree 3, not -1
    with pytest.raises(ValueError, match="degree"):
        mc_check(hctx(2, 5), unit(Y))


def test_mc_check_flags_failures():
    # the bare tripod with no higher stars leaves the h=5 residue
    ctx = hctx(2, 3)
    res = mc_check(ctx, unit(Y), cutoff=7)
    assert set(res) == {5}
    assert res[5] == scale(bracket_hgc(ctx, Y, Y), Fraction(1, 2))


def test_twist_at_zero_is_diff():
    ctx = hctx(2, 4, 2)
    dtw = twist_diff(ctx, {}, cutoff=6)
    for g in sample_pool(ctx, segment=False):
        assert dtw(g) == {h: c for h, c in diff_hgc(ctx, g).items()
                          if h.n_hairs <= 6}


def test_twist_squares_to_zero():
    for m, n in [(2, 3), (1, 2)]:
        ctx = hctx(m, n)
        dtw = twist_diff(ctx, tripod_mc(ctx, 1, cutoff=7), cutoff=7)
        for g in sample_pool(ctx, max_nv=3, max_extra=0, segment=False):
            assert not dtw(dtw(g)), (m, n, g.encode())
    ctx = hctx(2, 2, 2)
    dtw = twist_diff(ctx, line_mc(ctx, 1), cutoff=6)
    for g in sample_pool(ctx, max_nv=3):
        assert not dtw(dtw(g)), g.encode()


def test_twist_is_diff_plus_bracket():
    ctx = hctx(2, 2, 2)
    L = line_mc(ctx, 1)
    dtw = twist_diff(ctx, L, cutoff=7)
    H1 = Graph.make(1, [(0, 0)], [1])
    expected = add(diff_hgc(ctx, H1), bracket_hgc(ctx, L, unit(H1)))
    assert dtw(H1) == expected


def test_twist_rejects_non_mc():
    ctx = hctx(2, 3)
    with pytest.raises(NotMaurerCartan):
        twist_diff(ctx, unit(Y), cutoff=7)


@pytest.mark.parametrize("n", [2, 3])
def test_attach_one_hair_chain_map(n):
    # on the nose, and also against the twisted differential: the segment
    # bracket vanishes on the image since the double hairs cancel
    ctx = hctx(n, n, 2)
    gctx = ParityContext(n, min_valence=3)
    L = line_mc(ctx, 1)
    for l, k in [(2, 3), (3, 3), (3, 4), (4, 5), (4, 6), (5, 6)]:
        for g in enumerate_graphs(gctx, l, k):
            img = attach_one_hair(ctx, g)
            lhs = attach_one_hair(ctx, diff_gc(gctx, g))
            assert lhs == diff_hgc(ctx, img), (n, g.encode())
            assert not bracket_hgc(ctx, L, img), (n, g.encode())


def test_attach_one_hair_examples():
    # K4 is vertex transitive: all four attachments merge
    for n in (2, 3):
        ctx = hctx(n, n, 2)
        out = attach_one_hair(ctx, K4)
        K4h = Graph.make(4, K4.edges, [1, 0, 0, 0])
        can = canonicalize(ctx, K4h)
        assert out == {can[0]: 4 * can[1]}
    # the hairy triangle dies at even n (reflection costs an edge swap) and
    # merges to multiplicity 3 at odd n
    assert not attach_one_hair(hctx(2, 2, 2), TRI)
    ctx3 = hctx(3, 3, 2)
    out = attach_one_hair(ctx3, TRI)
    can = canonicalize(ctx3, Graph.make(3, TRI.edges, [1, 0, 0]))
    assert out == {can[0]: -3 * can[1]}
    assert not attach_one_hair(ctx3, {})


def test_attach_odd_hairs():
    ctx = hctx(2, 3, 2)
    out = attach_odd_hairs(ctx, TRI, cutoff=3)
    by_h = {}
    for g, c in out.items():
        by_h.setdefault(g.n_hairs, {})[g] = c
    assert set(by_h) == {1, 3}
    assert by_h[1] == attach_one_hair(ctx, TRI)
    # the 3-hair piece carries the 1/4 prefactor: every coefficient is a
    # multiple of 1/4 by the orbit count of its hair multiset
    assert all(c % Fraction(1, 4) == 0 for c in by_h[3].values())
    # linearity
    two = attach_odd_hairs(ctx, {TRI: Fraction(2)}, cutoff=3)
    assert two == scale(out, 2)


def test_degree_bounds():
    # HGC_{m,n} generators with n-m >= 2 sit in degree >= 1, and more
    # precisely >= g(n-3)+1 at loop order g
    for m, n in [(2, 4), (3, 5), (2, 5)]:
        ctx = hctx(m, n, 3)
        for nv in range(1, 5):
            for ne in range(0, nv + 2):
                for nh in range(1, 5):
                    for g in enumerate_graphs(ctx, nv, ne, nh):
                        deg = degree_hgc(ctx, g)
                        assert deg >= 1, (m, n, g.encode())
                        assert deg >= g.loop_order * (n - 3) + 1, \
                            (m, n, g.encode())
