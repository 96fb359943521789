import pytest
from hypothesis import given, strategies as st

from realmoduli.real_structure import (
    TooFewLabels, conjugate_tree, enumerate_sigma_invariant_trees, sigma_invariance, sigma_normal,
)
from realmoduli.tree_core import Tree, canonical_form, enumerate_stable_trees

KL = [(0, 3), (0, 4), (1, 2), (2, 0), (0, 5), (1, 3), (2, 1), (0, 6), (1, 4), (2, 2), (3, 0),
      (1, 5), (2, 3), (3, 1)]


def test_sigma_normal_examples():
    assert sigma_normal(0, 4).action == {1: 1, 2: 2, 3: 3, 4: 4}
    assert sigma_normal(1, 2).action == {1: 2, 2: 1, 3: 3, 4: 4}
    assert sigma_normal(2, 0).action == {1: 3, 3: 1, 2: 4, 4: 2}
    with pytest.raises(TooFewLabels):
        sigma_normal(1, 0)


def test_conjugate_tree_examples():
    t = Tree.from_splits(4, [{1, 2}])
    assert conjugate_tree(t, sigma_normal(0, 4)) == t
    assert canonical_form(conjugate_tree(t, sigma_normal(1, 2))) == canonical_form(t)
    u = Tree.from_splits(4, [{1, 3}])
    assert canonical_form(conjugate_tree(u, sigma_normal(1, 2))) != canonical_form(u)


def test_sigma_invariance_examples():
    s = sigma_normal(2, 0)
    # (13)(24) on {1,2|3,4}: the vertices swap and the edge is the special one
    io = sigma_invariance(Tree.from_splits(4, [{1, 2}]), s)
    assert io is not None and not io.real_vertices and io.special_invariant_edge is not None
    assert sigma_invariance(Tree.from_splits(4, [{1, 3}]), sigma_normal(1, 2)) is None
    t = Tree.from_splits(5, [{1, 2}])
    io = sigma_invariance(t, sigma_normal(0, 5))
    assert io.real_vertices == frozenset(t.vertices)


@pytest.mark.parametrize("k,l,count", [(0, 4, 4), (1, 2, 2), (2, 0, 4), (0, 5, 26), (1, 3, 8), (2, 1, 6)])
def test_invariant_tree_counts(k, l, count):
    assert len(enumerate_sigma_invariant_trees(sigma_normal(k, l))) == count


@pytest.mark.parametrize("k,l", KL)
def test_invariant_tree_properties(k, l):
    s = sigma_normal(k, l)
    found = enumerate_sigma_invariant_trees(s)
    direct = [t for t in enumerate_stable_trees(s.n)
              if canonical_form(conjugate_tree(t, s)) == canonical_form(t)]
    assert len(found) == len(direct)
    for t, io in found:
        assert canonical_form(conjugate_tree(t, s)) == canonical_form(t)
        assert all(io.iota_F[io.iota_F[f]] == f for f in t.flags)
        for i in range(1, s.n + 1):
            assert io.iota_F[i] == s(i)
        if l > 0:
            assert t.boundary(s.n) in io.real_vertices
        if not io.real_vertices:
            assert l == 0 and s.n % 2 == 0
            assert len(io.invariant_edges) == 1 and io.special_invariant_edge is not None
        for f, g in io.invariant_edges:
            if (f, g) == io.special_invariant_edge:
                assert io.iota_F[f] == g
            else:
                assert io.iota_F[f] == f
                assert {t.boundary(f), t.boundary(g)} <= io.real_vertices


@given(st.sampled_from(KL))
def test_tree_involution_commutes_with_boundary(kl):
    s = sigma_normal(*kl)
    for t, io in enumerate_sigma_invariant_trees(s):
        for f in t.flags:
            assert io.iota_V[t.boundary(f)] == t.boundary(io.iota_F[f])
            assert io.iota_F[t.j(f)] == t.j(io.iota_F[f])
