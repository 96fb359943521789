from functools import lru_cache
from math import factorial

import pytest

from realmoduli.double_cover import (
    W1_TAGS, build_cover, connected_components, cover_strata, glue_predicate, r_equivalence_classes,
    sheets_over_base,
)
from realmoduli.planar import enumerate_oplanar
from realmoduli.real_structure import enumerate_sigma_invariant_trees, sigma_normal
from realmoduli.sw_class import w1_cycle
from realmoduli.tree_core import canonical_form

# (components, cover strata, gluing tag counts) computed by the union-find construction
# and cross-checked against R-equivalence and the numeric orientation of every glued pair
FROZEN = {
    (0, 4): (2, 12, {"A": 4, "E": 2}),
    (1, 2): (2, 4, {"E": 2}),
    (0, 5): (1, 114, {"A": 30, "B": 12, "D": 6, "E": 12}),
    (1, 3): (1, 22, {"A": 6, "B": 4, "D": 2}),
    (2, 1): (1, 14, {"A": 2, "D": 2}),
    (0, 6): (1, 1500, {"A": 264, "B": 126, "C": 24, "D": 54, "E": 72}),
    (1, 4): (1, 204, {"A": 40, "B": 18, "D": 6, "E": 8}),
    (2, 2): (1, 52, {"A": 4, "B": 2, "D": 2, "E": 8}),
}


@lru_cache(None)
def cover(k, l):
    return build_cover(sigma_normal(k, l))


@pytest.mark.parametrize("kl", sorted(FROZEN))
def test_frozen_cover_shape(kl):
    comps, strata, tags = FROZEN[kl]
    cv = cover(*kl)
    assert connected_components(cv) == comps
    assert len(cv.classes) == strata
    assert {t: c for t, c in cv.tag_counts().items() if c} == tags


@pytest.mark.parametrize("kl", sorted(FROZEN) + [(2, 0), (3, 0)])
def test_two_sheets_over_every_base_stratum(kl):
    assert set(sheets_over_base(cover(*kl)).values()) == {2}


@pytest.mark.parametrize("kl", [(2, 0), (3, 0)])
def test_no_fixed_labels_gives_two_copies(kl):
    cv = cover(*kl)
    assert cv.trivial and connected_components(cv) == 2


def test_0_4_two_circles_from_six_cells():
    cv = cover(0, 4)
    assert len(cv.cells()) == 6
    assert connected_components(cv) == 2
    # each circle: 3 arcs and 3 points
    dims = [d for _, _, d in cover_strata(cv)]
    assert dims.count(1) == 6 and dims.count(0) == 6


def test_0_5_connected_from_24_cells():
    cv = cover(0, 5)
    assert len(cv.cells()) == 24 and connected_components(cv) == 1


@pytest.mark.parametrize("k,l", [(k, l) for k in range(4) for l in range(1, 7) if 3 <= 2 * k + l <= 7])
def test_one_vertex_cells(k, l):
    cv = cover(k, l)
    assert len(cv.cells()) == 2 ** k * factorial(l - 1)


@pytest.mark.parametrize("kl", [kl for kl in FROZEN if kl != (0, 6)])
def test_gluing_is_an_involution(kl):
    sigma = sigma_normal(*kl)
    for t, io in enumerate_sigma_invariant_trees(sigma):
        if len(t.edges) != 1 or not io.real_edges():
            continue
        for o in enumerate_oplanar(t, io):
            g = glue_predicate(t, io, o)
            back = glue_predicate(t, io, g.partner)
            assert g.partner != o and back.partner == o and back.tag == g.tag


@pytest.mark.parametrize("kl", sorted(FROZEN))
def test_w1_tags_project_onto_w1(kl):
    cv = cover(*kl)
    projected = {cv.base_stratum(i) for i, _, tag in cv.face_pairs if tag in W1_TAGS}
    cyc = w1_cycle(sigma_normal(*kl))
    assert projected == {(canonical_form(s.tree), s.u) for s in cyc.strata}


@pytest.mark.parametrize("kl", sorted(FROZEN))
def test_r_classes_are_cover_strata(kl):
    cv = cover(*kl)
    cls = r_equivalence_classes(sigma_normal(*kl))
    by_cover = {frozenset(cv.nodes[i] for i in c) for c in cv.classes}
    assert {frozenset(c) for c in cls} == by_cover


@pytest.mark.parametrize("k,l", [(0, 4), (1, 2), (0, 5), (1, 3), (2, 1), (1, 4), (2, 2)])
def test_one_vertex_r_classes(k, l):
    cls = r_equivalence_classes(sigma_normal(k, l))
    one = [c for c in cls if len(cover(k, l).trees[c[0][0]][0].edges) == 0]
    assert len(one) == 2 ** k * factorial(l - 1)
    assert all(len(c) == 1 for c in one)
