from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, strategies as st

from realmoduli.planar import (
    EMPTY, EmptyRealPartVertex, NonEmpty, NoSuchPermutation, OPlanar, base_structure,
    canonical_rotation, convention_representative, count_oplanar_one_vertex, enumerate_oplanar,
    enumerate_uplanar, frak_F, is_convention, parity, relabeling_permutation, reverse_all,
    reverse_at, signed_sets, to_uplanar,
)
from realmoduli.real_structure import enumerate_sigma_invariant_trees, sigma_invariance, sigma_normal
from realmoduli.tree_core import Tree, one_vertex_tree


def one_vertex(k, l):
    s = sigma_normal(k, l)
    t = one_vertex_tree(s.n)
    return s, t, sigma_invariance(t, s)


def nonempty(plus, minus, order, n):
    return NonEmpty(frozenset(plus), frozenset(minus), canonical_rotation(order, n))


def test_reverse_examples():
    o = OPlanar(((1, nonempty([], [], (1, 2, 3, 4), 4)),))
    assert reverse_at(o, 1, 4).at(1).order == canonical_rotation((1, 4, 3, 2), 4)
    o = OPlanar(((1, nonempty([1], [2], (3, 4), 4)),))
    r = reverse_at(o, 1, 4).at(1)
    assert r.plus == {2} and r.order == canonical_rotation((4, 3), 4)
    assert reverse_at(reverse_at(o, 1, 4), 1, 4) == o
    with pytest.raises(EmptyRealPartVertex):
        reverse_at(OPlanar(((1, EMPTY),)), 1)


@pytest.mark.parametrize("k,l,count", [(0, 4, 6), (1, 2, 2), (2, 0, 5)])
def test_oplanar_counts(k, l, count):
    s, t, io = one_vertex(k, l)
    assert len(enumerate_oplanar(t, io)) == count


@pytest.mark.parametrize("k,l", [(k, l) for n in range(3, 9) for k in range(n // 2 + 1)
                                 for l in [n - 2 * k] if l > 0])
def test_oplanar_count_formula(k, l):
    s, t, io = one_vertex(k, l)
    assert len(enumerate_oplanar(t, io)) == 2 ** k * factorial(l - 1) == count_oplanar_one_vertex(k, l)


@pytest.mark.parametrize("k,l,count", [(0, 4, 3), (0, 5, 12), (1, 2, 1)])
def test_uplanar_counts(k, l, count):
    s, t, io = one_vertex(k, l)
    assert len(enumerate_uplanar(t, io)) == count


def brute_force_chambers(k, l):
    """Combinatorial types of configurations read off directly: which member of each
    conjugate pair is in the upper half plane, and the cyclic order of the real labels."""
    s = sigma_normal(k, l)
    out = set()
    fixed = list(range(2 * k + 1, s.n + 1))
    for mask in range(2 ** k):
        plus = frozenset(i if mask >> (i - 1) & 1 else i + k for i in range(1, k + 1))
        for perm in permutations(fixed):
            out.add((plus, canonical_rotation(perm, s.n)))
    return out


@pytest.mark.parametrize("k,l", [(0, 3), (0, 4), (1, 2), (1, 3), (2, 1), (0, 5), (2, 2), (3, 1)])
def test_oplanar_matches_direct_types(k, l):
    s, t, io = one_vertex(k, l)
    got = {(o.at(1).plus, o.at(1).order) for o in enumerate_oplanar(t, io)}
    assert got == brute_force_chambers(k, l)


def test_signed_sets_examples():
    s, t, io = one_vertex(0, 4)
    o = enumerate_oplanar(t, io)[0]
    assert all(not x for x in signed_sets(t, io, o))
    # (2,0), tree {1,3|2,4}... the special edge lives on {1,2|3,4}
    s = sigma_normal(2, 0)
    t = Tree.from_splits(4, [{1, 2}])
    io = sigma_invariance(t, s)
    f, g = io.special_invariant_edge
    vp, vm, fp, fm = signed_sets(t, io, OPlanar((), f))
    assert vp == {t.boundary(f)} and vm == {t.boundary(g)}


def test_signed_sets_hanging_vertex():
    # (1,4): a conjugate pair of vertices {1,3} and {2,4} hanging off the real vertex
    s = sigma_normal(2, 2)
    t = Tree.from_splits(6, [{1, 2}, {3, 4}])
    io = sigma_invariance(t, s)
    for o in enumerate_oplanar(t, io):
        vp, vm, fp, fm = signed_sets(t, io, o)
        (v, d), = o.vertex_data
        for f in d.plus:
            assert t.boundary(t.j(f)) in vp
        for f in d.minus:
            assert t.boundary(t.j(f)) in vm


def test_parity_examples():
    s = sigma_normal(0, 5)
    assert parity(base_structure(s), s) == 0
    o = OPlanar(((1, nonempty([], [], (2, 1, 3, 4, 5), 5)),))
    assert parity(o, s) == 1
    s = sigma_normal(2, 1)
    o = OPlanar(((1, nonempty([1, 4], [3, 2], (5,), 5)),))
    assert parity(o, s) == 1
    with pytest.raises(NoSuchPermutation):
        relabeling_permutation(OPlanar(((1, nonempty([1, 3], [2, 4], (5,), 5)),)), s)


def brute_parity(o, s):
    """Minimum over all sigma-commuting, n-fixing permutations carrying the base structure to o."""
    base = base_structure(s)
    (_, b), = base.vertex_data
    (_, d), = o.vertex_data
    signs = set()
    for perm in permutations(range(1, s.n + 1)):
        rho = dict(zip(range(1, s.n + 1), perm))
        if any(rho[s(i)] != s(rho[i]) for i in rho):
            continue
        if s.l and rho[s.n] != s.n:
            continue
        if frozenset(rho[i] for i in b.plus) != d.plus:
            continue
        if canonical_rotation(tuple(rho[i] for i in b.order), s.n) != d.order:
            continue
        inv = sum(1 for i in range(s.n) for j in range(i + 1, s.n) if perm[i] > perm[j])
        signs.add(inv % 2)
    return signs


@pytest.mark.parametrize("k,l", [(0, 4), (0, 5), (1, 2), (1, 3), (2, 1), (2, 2), (1, 4)])
def test_parity_is_well_defined(k, l):
    s, t, io = one_vertex(k, l)
    for o in enumerate_oplanar(t, io):
        assert brute_parity(o, s) == {parity(o, s)}


@pytest.mark.parametrize("k,l", [(k, l) for n in range(3, 8) for k in range(n // 2 + 1)
                                 for l in [n - 2 * k] if l > 0])
def test_reversal_shifts_parity_uniformly(k, l):
    s, t, io = one_vertex(k, l)
    diffs = {(parity(reverse_all(o, s.n), s) - parity(o, s)) % 2 for o in enumerate_oplanar(t, io)}
    assert len(diffs) == 1


def test_convention_examples():
    s, t, io = one_vertex(0, 4)
    for u in enumerate_uplanar(t, io):
        rep = convention_representative(u, s)
        assert rep in u.lifts() and is_convention(rep, s)
        assert not is_convention(reverse_all(rep, 4), s)
    o = OPlanar(((1, nonempty([], [], (1, 2, 3, 4), 4)),))
    assert convention_representative(to_uplanar(o, t, io), s) == o
    s, t, io = one_vertex(1, 2)
    (u,) = enumerate_uplanar(t, io)
    assert 1 in convention_representative(u, s).at(1).plus
    s, t, io = one_vertex(2, 0)
    for u in enumerate_uplanar(t, io):
        if u.vertex_data[0][1] is not EMPTY:
            assert 2 in convention_representative(u, s).at(1).plus


def test_frak_F():
    assert frak_F(sigma_normal(0, 5)) == {1, 4, 5}
    assert frak_F(sigma_normal(2, 3)) == {5, 6, 7}
    assert frak_F(sigma_normal(3, 1)) == {3, 6, 7}
    assert frak_F(sigma_normal(2, 0)) == {2, 4}


KL = [(0, 4), (1, 2), (2, 0), (0, 5), (1, 3), (2, 1), (0, 6), (1, 4), (2, 2), (3, 0)]


@given(st.sampled_from(KL), st.data())
def test_uplanar_is_two_to_one(kl, data):
    s = sigma_normal(*kl)
    t, io = data.draw(st.sampled_from(enumerate_sigma_invariant_trees(s)))
    os_ = enumerate_oplanar(t, io)
    us = enumerate_uplanar(t, io)
    for o in os_:
        u = to_uplanar(o, t, io)
        assert o in u.lifts()
        if not o.is_empty_real_part and io.real_vertices:
            assert to_uplanar(reverse_all(o, s.n), t, io) == u
    for u in us:
        lifts = u.lifts()
        assert len(lifts) == (1 if u.vertex_data and any(p is EMPTY for _, p in u.vertex_data)
                              else 2 ** len(u.vertex_data) if u.vertex_data else 2)
    assert sum(len(u.lifts()) for u in us) == len(os_)


@given(st.sampled_from(KL), st.data())
def test_reversal_is_an_involution(kl, data):
    s = sigma_normal(*kl)
    t, io = data.draw(st.sampled_from(enumerate_sigma_invariant_trees(s)))
    for o in enumerate_oplanar(t, io):
        for v, d in o.vertex_data:
            if d is not EMPTY:
                assert reverse_at(reverse_at(o, v, s.n), v, s.n) == o
                assert reverse_at(o, v, s.n) in enumerate_oplanar(t, io)
