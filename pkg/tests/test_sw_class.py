import pytest

from realmoduli.orientation import pi, wall
from realmoduli.planar import enumerate_uplanar, to_uplanar
from realmoduli.real_structure import enumerate_sigma_invariant_trees, sigma_normal
from realmoduli.strata import contract_oplanar
from realmoduli.sw_class import in_cycle_by_closed_form, is_orientable, two_vertex_trees, w1_cycle
from realmoduli.tree_core import Tree, canonical_form

# (strata, trees) in the cycle; computed by w1_cycle and cross-checked against the
# Jacobian oracle wall by wall (tests/test_numeric_oracle.py)
W1_COUNTS = {
    (0, 4): (0, 0), (1, 2): (0, 0), (2, 0): (0, 0), (0, 3): (0, 0),
    (0, 5): (9, 3), (1, 3): (3, 3), (2, 1): (1, 1),
    (0, 6): (90, 10), (1, 4): (12, 4), (2, 2): (2, 2), (3, 0): (0, 0),
    (0, 7): (972, 25), (1, 5): (96, 11), (2, 3): (18, 9), (3, 1): (6, 3),
}


@pytest.mark.parametrize("kl", sorted(W1_COUNTS))
def test_w1_counts(kl):
    cyc = w1_cycle(sigma_normal(*kl))
    assert (len(cyc.strata), len(cyc.trees)) == W1_COUNTS[kl]
    assert all(s.dim == sum(kl) + kl[0] - 4 for s in cyc.strata)


def test_w1_0_5_trees():
    cyc = w1_cycle(sigma_normal(0, 5))
    want = set()
    for t, _ in two_vertex_trees(sigma_normal(0, 5)):
        for v in t.vertices:
            if t.valency(v) == 4 and len(set(t.flags_at(v)) & {1, 4, 5}) == 1:
                want.add(canonical_form(t))
    assert {canonical_form(t) for t in cyc.trees} == want and len(want) == 3
    assert sorted(cyc.labels()) == ["{1,2,3|4,5}", "{1,4|2,3,5}", "{2,3,4|1,5}"]


@pytest.mark.parametrize("kl", [(2, 0), (3, 0), (4, 0), (0, 4), (1, 2)])
def test_w1_vanishes(kl):
    assert w1_cycle(sigma_normal(*kl)).strata == []
    assert is_orientable(sigma_normal(*kl))


@pytest.mark.parametrize("kl", [(0, 5), (1, 3), (2, 1), (0, 6), (1, 4), (2, 2)])
def test_not_orientable(kl):
    assert not is_orientable(sigma_normal(*kl))


@pytest.mark.parametrize("kl", [kl for kl in W1_COUNTS if kl[1] > 0])
def test_membership_from_tree_data(kl):
    s = sigma_normal(*kl)
    cyc = {canonical_form(t) for t in w1_cycle(s).trees}
    for t, io in two_vertex_trees(s):
        assert in_cycle_by_closed_form(t, io, s) == (canonical_form(t) in cyc)


# walls where the published closed form disagrees with the componentwise count
PRINTED_DIFFERS = {(1, 2): ["{1,2|3,4}"], (2, 2): ["{1,2,3,4|5,6}", "{2,4|1,3,5,6}"],
                   (0, 6): ["{1,5|2,3,4,6}"]}


@pytest.mark.parametrize("kl", [(0, 4), (1, 2), (0, 5), (1, 3), (2, 1), (0, 6), (1, 4), (2, 2)])
def test_published_closed_form_disagreements(kl):
    s = sigma_normal(*kl)
    diff = sorted(str(t)[5:-1] for t, io in two_vertex_trees(s)
                  if in_cycle_by_closed_form(t, io, s, printed=True) != in_cycle_by_closed_form(t, io, s))
    assert diff == PRINTED_DIFFERS.get(kl, [])


@pytest.mark.parametrize("kl", [(0, 5), (1, 3), (2, 1), (0, 6), (1, 4), (2, 2), (1, 5), (2, 3), (3, 1)])
def test_cycle_closes_mod_two(kl):
    """Around each corner (two real edges) the cycle walls meet an even number of times."""
    s = sigma_normal(*kl)
    for t, io in enumerate_sigma_invariant_trees(s):
        if len(t.edges) != 2 or len(io.real_edges()) != 2:
            continue
        for u in enumerate_uplanar(t, io):
            hits = 0
            for d in u.lifts():
                for e in io.real_edges():
                    other = [x for x in t.edges if x != e]
                    (w, wio, dw), = contract_oplanar(t, io, d, other)
                    hits += pi(wall(w, wio, to_uplanar(dw, w, wio))) == 0
            # every lift sees each branch once; four lifts per pair of reversals
            assert hits % 4 == 0
