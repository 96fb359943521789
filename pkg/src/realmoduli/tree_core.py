"""Stable n-trees: flags, boundary map and flag involution.

A tree is stored exactly as its combinatorial data: a set of flags, the
boundary map sending each flag to its vertex, and the involution ``j``
whose fixed points are the tails.  Tails are the flags ``1..n``; internal
flags have identifiers larger than ``n``.  Vertex identifiers are always
normalized to the smallest flag incident to the vertex, so two trees built
from the same flags compare equal regardless of how vertices were named.
"""
from __future__ import annotations

import json
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping


class TreeError(ValueError):
    """Base class for invalid tree data."""


class NotATree(TreeError):
    pass


class Unstable(TreeError):
    pass


class BadLabels(TreeError):
    pass


class UnknownEdge(TreeError):
    pass


Edge = tuple[int, int]


class Tree:
    """An n-tree.  Construct through :func:`validate` or :meth:`from_splits`."""

    __slots__ = ("n", "flags", "_boundary", "_j", "_vflags", "_hash")

    def __init__(self, n: int, boundary: Mapping[int, int], j: Mapping[int, int]):
        groups: dict[int, list[int]] = defaultdict(list)
        for f, v in boundary.items():
            groups[v].append(f)
        rename = {v: min(fs) for v, fs in groups.items()}
        self.n = n
        self.flags = tuple(sorted(boundary))
        self._boundary = {f: rename[boundary[f]] for f in self.flags}
        self._j = {f: j[f] for f in self.flags}
        vf: dict[int, tuple[int, ...]] = {}
        for v, fs in groups.items():
            vf[rename[v]] = tuple(sorted(fs))
        self._vflags = dict(sorted(vf.items()))
        self._hash = None

    # basic accessors
    def boundary(self, f: int) -> int:
        return self._boundary[f]

    def j(self, f: int) -> int:
        return self._j[f]

    @property
    def boundary_map(self) -> dict[int, int]:
        return dict(self._boundary)

    @property
    def j_map(self) -> dict[int, int]:
        return dict(self._j)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(self._vflags)

    def flags_at(self, v: int) -> tuple[int, ...]:
        return self._vflags[v]

    def valency(self, v: int) -> int:
        return len(self._vflags[v])

    @property
    def tails(self) -> tuple[int, ...]:
        return tuple(f for f in self.flags if self._j[f] == f)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple((f, g) for f, g in self._j.items() if f < g)

    def edge_of(self, f: int) -> Edge:
        g = self._j[f]
        return (min(f, g), max(f, g))

    def neighbors(self, v: int) -> list[tuple[int, int, int]]:
        """(flag at v, flag at neighbour, neighbour) for each edge at v."""
        out = []
        for f in self._vflags[v]:
            g = self._j[f]
            if g != f:
                out.append((f, g, self._boundary[g]))
        return out

    def tail_vertex(self, label: int) -> int:
        return self._boundary[label]

    # structural equality, not isomorphism
    def _key(self):
        return (self.n, tuple(self._boundary.items()), tuple(self._j.items()))

    def __eq__(self, other) -> bool:
        return isinstance(other, Tree) and self._key() == other._key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self) -> str:
        return f"Tree({describe(self)})"

    # tails on the far side of every flag
    def far_sides(self) -> dict[int, frozenset[int]]:
        """Map each flag to the tails reached by leaving its vertex through it."""
        sides: dict[int, frozenset[int]] = {}

        def collect(f: int) -> frozenset[int]:
            if f in sides:
                return sides[f]
            g = self._j[f]
            if g == f:
                sides[f] = frozenset((f,))
                return sides[f]
            w = self._boundary[g]
            acc: set[int] = set()
            for h in self._vflags[w]:
                if h != g:
                    acc |= collect(h)
            sides[f] = frozenset(acc)
            return sides[f]

        for f in self.flags:
            collect(f)
        return sides

    def splits(self) -> frozenset[frozenset[int]]:
        """Edges as tail bipartitions, each given by the side avoiding n."""
        sides = self.far_sides()
        out = set()
        for f, g in self.edges:
            s = sides[f]
            out.add(s if self.n not in s else sides[g])
        return frozenset(out)

    @classmethod
    def from_splits(cls, n: int, splits: Iterable[Iterable[int]]) -> "Tree":
        """Build the tree whose edges realize the given compatible splits."""
        fam = sorted({frozenset(s) for s in splits}, key=lambda s: (len(s), sorted(s)))
        for s in fam:
            if n in s or len(s) < 2 or len(s) > n - 2:
                raise NotATree(f"bad split {sorted(s)} for n={n}")
        boundary: dict[int, int] = {}
        jmap: dict[int, int] = {}
        counter = [n]

        def build(tails: frozenset[int], children: list[frozenset[int]], vid: int, up: int | None):
            # maximal members of children
            maximal = [c for c in children if not any(c < d for d in children)]
            covered: set[int] = set()
            for c in maximal:
                covered |= c
            for t in sorted(tails - covered):
                boundary[t] = vid
                jmap[t] = t
            if up is not None:
                boundary[up] = vid
            for c in sorted(maximal, key=lambda s: sorted(s)):
                counter[0] += 1
                down = counter[0]
                counter[0] += 1
                upflag = counter[0]
                boundary[down] = vid
                jmap[down] = upflag
                jmap[upflag] = down
                inner = [d for d in children if d < c]
                build(c, inner, upflag, upflag)

        for a, b in combinations(fam, 2):
            if not (a <= b or b <= a or not (a & b)):
                raise NotATree("incompatible splits")
        build(frozenset(range(1, n + 1)), fam, 0, None)
        # the root got provisional id 0; vertex ids get normalized anyway
        return validate(Tree(n, boundary, jmap))


def validate(tree: Tree, stable: bool = True) -> Tree:
    """Check involution, tree shape, labels and (optionally) stability."""
    n = tree.n
    for f in tree.flags:
        g = tree.j(f)
        if g not in tree._j or tree.j(g) != f:
            raise NotATree(f"j is not an involution at flag {f}")
    tails = tree.tails
    if sorted(tails) != list(range(1, n + 1)):
        raise BadLabels(f"tails {sorted(tails)} are not 1..{n}")
    for f in tree.flags:
        if tree.j(f) != f and f <= n:
            raise BadLabels(f"internal flag {f} collides with a tail label")
    nv, ne = len(tree.vertices), len(tree.edges)
    if nv != ne + 1:
        raise NotATree(f"|V|={nv} but |E|={ne}")
    seen = {tree.vertices[0]}
    stack = [tree.vertices[0]]
    while stack:
        v = stack.pop()
        for _, _, w in tree.neighbors(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != nv:
        raise NotATree("disconnected")
    if stable:
        for v in tree.vertices:
            if tree.valency(v) < 3:
                raise Unstable(f"vertex {v} has valency {tree.valency(v)}")
    return tree


def one_vertex_tree(n: int) -> Tree:
    return validate(Tree(n, {i: 1 for i in range(1, n + 1)}, {i: i for i in range(1, n + 1)}))


@dataclass(frozen=True)
class TreeMorphism:
    """phi_F maps target flags to source flags, phi_V source to target vertices."""

    source: Tree
    target: Tree
    phi_F: Mapping[int, int]
    phi_V: Mapping[int, int]

    def tail_map(self) -> dict[int, int]:
        # label in the source -> label in the target
        return {self.phi_F[t]: t for t in self.target.tails}


def find_isomorphism(t1: Tree, t2: Tree, tail_map: Mapping[int, int]) -> TreeMorphism | None:
    """The isomorphism t1 -> t2 restricting to ``tail_map`` on tails, if any."""
    if t1.n != t2.n or len(t1.flags) != len(t2.flags):
        return None
    s1, s2 = t1.far_sides(), t2.far_sides()
    by_side = {side: f for f, side in s2.items()}
    fmap: dict[int, int] = {}
    for f, side in s1.items():
        g = by_side.get(frozenset(tail_map[x] for x in side))
        if g is None:
            return None
        fmap[f] = g
    vmap: dict[int, int] = {}
    for f, g in fmap.items():
        v, w = t1.boundary(f), t2.boundary(g)
        if vmap.setdefault(v, w) != w:
            return None
        if fmap[t1.j(f)] != t2.j(g):
            return None
    if len(set(vmap.values())) != len(vmap):
        return None
    return TreeMorphism(t1, t2, {g: f for f, g in fmap.items()}, vmap)


def contract_edges_with_map(tree: Tree, edge_set: Iterable[Edge]) -> tuple[Tree, dict[int, int]]:
    """Contract edges; also return the surjection old vertex -> new vertex."""
    edges = {tuple(sorted(e)) for e in edge_set}
    known = set(tree.edges)
    for e in edges:
        if e not in known:
            raise UnknownEdge(e)
    parent = {v: v for v in tree.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    removed = set()
    for f, g in edges:
        a, b = find(tree.boundary(f)), find(tree.boundary(g))
        parent[max(a, b)] = min(a, b)
        removed |= {f, g}
    boundary = {f: find(tree.boundary(f)) for f in tree.flags if f not in removed}
    jmap = {f: tree.j(f) for f in tree.flags if f not in removed}
    new = Tree(tree.n, boundary, jmap)
    # new vertex ids are the smallest surviving flag of each merged class
    newid: dict[int, int] = {}
    for f in boundary:
        r = find(tree.boundary(f))
        newid[r] = min(newid.get(r, f), f)
    vmap = {v: newid[find(v)] for v in tree.vertices}
    return validate(new, stable=False), vmap


def contract_edges(tree: Tree, edge_set: Iterable[Edge]) -> Tree:
    return contract_edges_with_map(tree, edge_set)[0]


def less_than(t1: Tree, t2: Tree) -> bool:
    """t1 <= t2: t2 is obtained from t1 by contracting some edges."""
    return t1.n == t2.n and t2.splits() <= t1.splits()


def _encode(tree: Tree, v: int, via: int | None):
    items = []
    for f in tree.flags_at(v):
        if f == via:
            continue
        g = tree.j(f)
        if g == f:
            items.append((0, f))
        else:
            items.append((1, _encode(tree, tree.boundary(g), g)))
    return tuple(sorted(items))


def canonical_form(tree: Tree) -> bytes:
    """Rooted encoding at the vertex of tail n; equal iff isomorphic (tails fixed)."""
    return repr((tree.n, _encode(tree, tree.boundary(tree.n), None))).encode()


def from_canonical_form(code: bytes) -> Tree:
    import ast

    n, enc = ast.literal_eval(code.decode())
    splits = []

    def walk(node) -> frozenset[int]:
        acc: set[int] = set()
        for kind, item in node:
            if kind == 0:
                acc.add(item)
            else:
                s = walk(item)
                splits.append(s)
                acc |= s
        return frozenset(acc)

    walk(enc)
    return Tree.from_splits(n, splits)


def _expansions(tree: Tree) -> list[Tree]:
    out = []
    nxt = max(tree.flags) + 1
    for v in tree.vertices:
        fs = tree.flags_at(v)
        if len(fs) < 4:
            continue
        anchor, rest = fs[0], fs[1:]
        for size in range(2, len(fs) - 1):
            for part in combinations(rest, size):
                # the moved part never contains the anchor flag, so each split appears once
                boundary = tree.boundary_map
                jmap = tree.j_map
                for f in part:
                    boundary[f] = nxt + 1
                boundary[nxt] = v
                boundary[nxt + 1] = nxt + 1
                jmap[nxt] = nxt + 1
                jmap[nxt + 1] = nxt
                out.append(Tree(tree.n, boundary, jmap))
    return out


def _renumbered(tree: Tree) -> Tree:
    return Tree.from_splits(tree.n, tree.splits())


def enumerate_stable_trees(n: int, threads: int = 1) -> list[Tree]:
    """One tree per isomorphism class, sorted by (|E|, canonical form)."""
    if n < 3:
        raise TreeError("need n >= 3")
    start = one_vertex_tree(n)
    found = {canonical_form(start): start}
    layer = [start]
    while layer:
        if threads > 1:
            with ThreadPoolExecutor(threads) as ex:
                batches = list(ex.map(_expansions, layer))
        else:
            batches = [_expansions(t) for t in layer]
        nxt_layer = {}
        for batch in batches:
            for t in batch:
                c = canonical_form(t)
                if c not in found and c not in nxt_layer:
                    nxt_layer[c] = t
        for c in sorted(nxt_layer):
            found[c] = _renumbered(nxt_layer[c])
        layer = [found[c] for c in sorted(nxt_layer)]
    return sorted(found.values(), key=lambda t: (len(t.edges), canonical_form(t)))


def describe(tree: Tree) -> str:
    """Readable form.  Two vertices: ``{1,2|3,4}``; otherwise nested from the tail-n vertex."""
    if len(tree.vertices) == 2:
        sides = tree.far_sides()
        f, g = tree.edges[0]
        a, b = sorted(sides[f]), sorted(sides[g])
        a, b = (a, b) if tree.n in b else (b, a)
        return "{" + ",".join(map(str, a)) + "|" + ",".join(map(str, b)) + "}"

    def nest(v: int, via: int | None) -> str:
        items = []
        for f in tree.flags_at(v):
            if f == via:
                continue
            g = tree.j(f)
            items.append((0, f, str(f)) if g == f else (1, 0, nest(tree.boundary(g), g)))
        return "(" + ",".join(s for _, _, s in sorted(items)) + ")"

    return nest(tree.boundary(tree.n), None)


def to_json(tree: Tree) -> dict:
    return {
        "n": tree.n,
        "flags": list(tree.flags),
        "boundary": {str(f): v for f, v in tree.boundary_map.items()},
        "j": {str(f): g for f, g in tree.j_map.items()},
    }


def from_json(data: Mapping | str) -> Tree:
    if isinstance(data, str):
        data = json.loads(data)
    boundary = {int(f): int(v) for f, v in data["boundary"].items()}
    jmap = {int(f): int(g) for f, g in data["j"].items()}
    if sorted(boundary) != sorted(int(f) for f in data["flags"]) or set(jmap) != set(boundary):
        raise NotATree("flags, boundary and j disagree")
    return validate(Tree(int(data["n"]), boundary, jmap))


def to_dot(tree: Tree, name: str = "tree") -> str:
    lines = [f"graph {name} {{"]
    for v in tree.vertices:
        lines.append(f'  v{v} [shape=circle,label=""];')
    for f in tree.tails:
        lines.append(f'  t{f} [shape=plaintext,label="{f}"];')
        lines.append(f"  v{tree.boundary(f)} -- t{f};")
    for f, g in tree.edges:
        lines.append(f"  v{tree.boundary(f)} -- v{tree.boundary(g)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
