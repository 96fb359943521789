"""Orientation double cover assembled from closed chambers.

Every one-vertex o-planar structure is a closed chamber (a sheet carrying
one of the two orientations of a chamber of the base).  Walls are glued in
pairs: across a wall where the sheet orientations extend, reverse at the
light vertex; across a wall in the Stiefel-Whitney cycle, reverse at the
other vertex.  Faces of higher codimension follow edge by edge.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .orientation import (
    TwoVertexContext,
    edge_flags,
    frak_weight,
    pi_closed_form,
    two_vertex_context,
)
from .planar import EMPTY, OPlanar, UPlanar, enumerate_oplanar, reverse_at, to_uplanar
from .real_structure import LabelInvolution, TreeInvolution, enumerate_sigma_invariant_trees
from .strata import contract_oplanar
from .tree_core import Tree, canonical_form, contract_edges_with_map, describe


class CoverError(RuntimeError):
    pass


class UnmatchedFace(CoverError):
    pass


TAGS = ("A", "B", "C", "D", "E", "F")
W1_TAGS = frozenset("BDF")


@dataclass(frozen=True)
class Gluing:
    tag: str
    reversed_vertex: int
    partner: OPlanar


def glue_predicate(gamma: Tree, iota: TreeInvolution, delta: OPlanar) -> Gluing:
    """Partner face of a wall face (two real vertices, l > 0)."""
    sigma = iota.sigma
    n = gamma.n
    v_e, v_E, _, _ = edge_flags(gamma)
    ctx = two_vertex_context(gamma, iota, delta)
    light_E = frak_weight(gamma, sigma, v_E) <= 1
    light_e = frak_weight(gamma, sigma, v_e) <= 1
    if light_E == light_e:
        raise UnmatchedFace(f"no unique light vertex on {describe(gamma)}")
    v = v_E if light_E else v_e
    other = v_e if light_E else v_E
    extends = pi_closed_form(ctx, v) == 1
    if light_E:
        tag = "A" if extends else "B"
    elif ctx.real_e != 3:
        tag = "C" if extends else "D"
    else:
        tag = "E" if extends else "F"
    w = v if extends else other
    return Gluing(tag, w, reverse_at(delta, w, n))


class _DSU:
    def __init__(self):
        self.parent: dict = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def reverse_side(gamma: Tree, iota: TreeInvolution, delta: OPlanar, edge, keep_vertex_of: int | None = None):
    """Pieces needed to glue along one real edge of a larger tree.

    Returns (wall tree, wall involution, wall structure, vmap) where the wall
    is gamma with every other edge contracted.
    """
    others = [e for e in gamma.edges if e != edge]
    (wt, wio, wd), = contract_oplanar(gamma, iota, delta, others)
    _, vmap = contract_edges_with_map(gamma, others)
    return wt, wio, wd, vmap


def _reverse_many(o: OPlanar, vertices, n: int) -> OPlanar:
    for v in vertices:
        o = reverse_at(o, v, n)
    return o


@dataclass
class DoubleCover:
    sigma: LabelInvolution
    nodes: list[tuple[bytes, OPlanar]]  # every o-planar tree, by canonical tree code
    trees: dict[bytes, tuple[Tree, TreeInvolution]]
    classes: list[list[int]]  # cover strata as sets of node ids
    cell_of: dict[int, int] = field(default_factory=dict)  # node id -> chamber node id
    face_pairs: list[tuple[int, int, str]] = field(default_factory=list)
    trivial: bool = False

    def tag_counts(self) -> dict[str, int]:
        c = Counter(t for _, _, t in self.face_pairs)
        return {t: c.get(t, 0) for t in TAGS}

    def cells(self) -> list[int]:
        return sorted({c for c in self.cell_of.values()})

    def dim_of(self, node: int) -> int:
        t, _ = self.trees[self.nodes[node][0]]
        return self.sigma.n - 3 - len(t.edges)

    def base_stratum(self, node: int) -> tuple[bytes, UPlanar]:
        code, o = self.nodes[node]
        t, io = self.trees[code]
        return code, to_uplanar(o, t, io)

    def to_json(self) -> dict:
        comps = connected_components(self)
        return {
            "sigma": self.sigma.to_json(),
            "trivial": self.trivial,
            "cells": len(self.cells()) if not self.trivial else None,
            "strata": len(self.classes),
            "components": comps,
            "tags": self.tag_counts(),
        }


def build_cover(sigma: LabelInvolution, threads: int = 1) -> DoubleCover:
    if sigma.l == 0:
        return _trivial_cover(sigma, threads)
    n = sigma.n
    trees: dict[bytes, tuple[Tree, TreeInvolution]] = {}
    nodes: list[tuple[bytes, OPlanar]] = []
    index: dict[tuple[bytes, OPlanar], int] = {}
    for t, io in enumerate_sigma_invariant_trees(sigma, threads=threads):
        code = canonical_form(t)
        trees[code] = (t, io)
        for o in enumerate_oplanar(t, io):
            index[(code, o)] = len(nodes)
            nodes.append((code, o))
    dsu = _DSU()
    for i in range(len(nodes)):
        dsu.add(i)
    cell_of: dict[int, int] = {}
    face_pairs: list[tuple[int, int, str]] = []
    one_vertex = next(c for c, (t, _) in trees.items() if len(t.edges) == 0)
    t1, _ = trees[one_vertex]
    for i, (code, o) in enumerate(nodes):
        t, io = trees[code]
        (_, _, c), = contract_oplanar(t, io, o, t.edges)
        cell_of[i] = index[(one_vertex, c)]
        real = io.real_edges()
        if len(t.edges) == 1 and len(real) == 1:
            g = glue_predicate(t, io, o)
            j = index.get((code, g.partner))
            if j is None:
                raise UnmatchedFace(f"partner missing on {describe(t)}")
            back = glue_predicate(t, io, g.partner)
            if back.partner != o or back.tag != g.tag:
                raise UnmatchedFace(f"gluing is not an involution on {describe(t)}")
            if i < j:
                face_pairs.append((i, j, g.tag))
            elif i == j:
                raise UnmatchedFace("face glued to itself")
        for e in real:
            wt, wio, wd, vmap = reverse_side(t, io, o, e)
            g = glue_predicate(wt, wio, wd)
            side = [v for v in io.real_vertices if vmap[v] == g.reversed_vertex]
            dsu.union(i, index[(code, _reverse_many(o, side, n))])
    groups: dict[int, list[int]] = defaultdict(list)
    for i in range(len(nodes)):
        groups[dsu.find(i)].append(i)
    classes = sorted(groups.values())
    return DoubleCover(sigma, nodes, trees, classes, cell_of, face_pairs)


def _trivial_cover(sigma: LabelInvolution, threads: int) -> DoubleCover:
    """Two disjoint copies of the base (used when no label is fixed: the base is orientable)."""
    trees: dict = {}
    nodes: list = []
    classes: list = []
    from .planar import enumerate_uplanar

    for t, io in enumerate_sigma_invariant_trees(sigma, threads=threads):
        code = canonical_form(t)
        trees[code] = (t, io)
        for u in enumerate_uplanar(t, io):
            o = u.lifts()[0]
            nodes.append((code, o))
    m = len(nodes)
    classes = [[i] for i in range(m)] + [[i + m] for i in range(m)]
    nodes = nodes + nodes
    return DoubleCover(sigma, nodes, trees, classes, trivial=True)


def connected_components(cover: DoubleCover) -> int:
    if cover.trivial:
        # each copy of the base is connected (its chambers meet along walls)
        return 2
    dsu = _DSU()
    for c in cover.cells():
        dsu.add(c)
    for i, j, _ in cover.face_pairs:
        dsu.union(cover.cell_of[i], cover.cell_of[j])
    return len({dsu.find(c) for c in cover.cells()})


def r_equivalence_classes(sigma: LabelInvolution, threads: int = 1) -> list[list[tuple[bytes, OPlanar]]]:
    """R-equivalence, generated tree by tree.

    One real vertex: singleton classes.  A real edge e relates two
    structures when they differ by reversal of every real vertex on one
    side of e and their images on the tree with all other edges contracted
    are glued partners.
    """
    out = []
    for t, io in enumerate_sigma_invariant_trees(sigma, threads=threads):
        code = canonical_form(t)
        os_ = enumerate_oplanar(t, io)
        pos = {o: i for i, o in enumerate(os_)}
        dsu = _DSU()
        for i in range(len(os_)):
            dsu.add(i)
        real = io.real_edges()
        for o in os_:
            for e in real:
                wt, wio, wd, vmap = reverse_side(t, io, o, e)
                partner = glue_predicate(wt, wio, wd).partner
                a_side = {v for v in io.real_vertices if vmap[v] == vmap[t.boundary(e[0])]}
                b_side = set(io.real_vertices) - a_side
                for side in (a_side, b_side):
                    cand = _reverse_many(o, side, t.n)
                    (_, _, cw), = contract_oplanar(t, io, cand, [x for x in t.edges if x != e])
                    if cw == partner:
                        dsu.union(pos[o], pos[cand])
        groups: dict[int, list] = defaultdict(list)
        for i, o in enumerate(os_):
            groups[dsu.find(i)].append((code, o))
        out.extend(groups.values())
    return out


def cover_strata(cover: DoubleCover) -> list[tuple[bytes, UPlanar, int]]:
    """(tree code, base u-planar structure, dimension) of every cover stratum."""
    out = []
    for cls in cover.classes:
        code, u = cover.base_stratum(cls[0])
        out.append((code, u, cover.dim_of(cls[0])))
    return out


def sheets_over_base(cover: DoubleCover) -> dict[tuple[bytes, UPlanar], int]:
    """Number of cover strata over each base stratum (2 for a double cover)."""
    c: Counter = Counter()
    for code, u, _ in cover_strata(cover):
        c[(code, u)] += 1
    return dict(c)


def sheet_orientation(o: OPlanar, sigma: LabelInvolution) -> tuple[OPlanar, int]:
    """Orientation of the sheet labelled o, as (representative, sign) on its base chamber.

    The convention representative carries (-1)^|o| times its reference
    form; the reversed structure labels the other sheet, with the opposite sign.
    """
    from .orientation import chamber_orientation

    rep, eps = chamber_orientation(o, sigma)
    return rep, eps if rep == o else -eps
