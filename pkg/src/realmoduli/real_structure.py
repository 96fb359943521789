"""Label involutions of type (2k, l) and the induced involutions of trees."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .tree_core import Tree, canonical_form, enumerate_stable_trees, find_isomorphism, validate


class TooFewLabels(ValueError):
    pass


@dataclass(frozen=True)
class LabelInvolution:
    """Normalized involution: i <-> i+k for i <= k, labels 2k+1..n fixed."""

    k: int
    l: int

    def __post_init__(self):
        if self.k < 0 or self.l < 0 or 2 * self.k + self.l < 3:
            raise TooFewLabels(f"(k,l)=({self.k},{self.l}) gives fewer than 3 labels")

    @property
    def n(self) -> int:
        return 2 * self.k + self.l

    def __call__(self, i: int) -> int:
        k = self.k
        if i <= k:
            return i + k
        if i <= 2 * k:
            return i - k
        return i

    @cached_property
    def action(self) -> dict[int, int]:
        return {i: self(i) for i in range(1, self.n + 1)}

    @property
    def fixed(self) -> tuple[int, ...]:
        return tuple(range(2 * self.k + 1, self.n + 1))

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, i + self.k) for i in range(1, self.k + 1))

    def cycles(self) -> str:
        return "".join(f"({a} {b})" for a, b in self.pairs) + "".join(f"({i})" for i in self.fixed)

    def to_json(self) -> dict:
        return {"k": self.k, "l": self.l}


def sigma_normal(k: int, l: int) -> LabelInvolution:
    return LabelInvolution(k, l)


def conjugate_tree(tree: Tree, sigma: LabelInvolution) -> Tree:
    """Relabel tails by sigma; internal structure untouched."""
    boundary, jmap = {}, {}
    for f in tree.flags:
        g = tree.j(f)
        if g == f:
            boundary[sigma(f)] = tree.boundary(f)
            jmap[sigma(f)] = sigma(f)
        else:
            boundary[f] = tree.boundary(f)
            jmap[f] = g
    return validate(Tree(tree.n, boundary, jmap))


class TreeInvolution:
    """The automorphism of a sigma-invariant tree extending sigma on tails."""

    def __init__(self, base: Tree, sigma: LabelInvolution, iota_F: dict[int, int], iota_V: dict[int, int]):
        self.base = base
        self.sigma = sigma
        self.iota_F = iota_F
        self.iota_V = iota_V
        self.real_vertices = frozenset(v for v in base.vertices if iota_V[v] == v)
        self.real_flags = {
            v: frozenset(f for f in base.flags_at(v) if iota_F[f] == f) for v in self.real_vertices
        }
        inv = []
        special = None
        for f, g in base.edges:
            if iota_F[f] in (f, g):
                inv.append((f, g))
                if iota_F[f] == g:
                    special = (f, g)
        self.invariant_edges = tuple(inv)
        self.special_invariant_edge = special

    def __repr__(self):
        return f"TreeInvolution(real={sorted(self.real_vertices)}, special={self.special_invariant_edge})"

    def nonreal_flags(self, v: int) -> tuple[int, ...]:
        return tuple(f for f in self.base.flags_at(v) if self.iota_F[f] != f)

    def real_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(e for e in self.invariant_edges if e != self.special_invariant_edge)

    def edge_orbits(self) -> list[tuple[tuple[int, int], ...]]:
        """Edges grouped into iota-orbits, ordered by smallest flag."""
        seen, out = set(), []
        for f, g in self.base.edges:
            if (f, g) in seen:
                continue
            a = self.iota_F[f]
            other = self.base.edge_of(a)
            orbit = ((f, g),) if other == (f, g) else tuple(sorted({(f, g), other}))
            seen.update(orbit)
            out.append(orbit)
        return sorted(out, key=lambda orb: min(min(e) for e in orb))

    def to_json(self) -> dict:
        return {"iota_F": {str(f): g for f, g in sorted(self.iota_F.items())}}


def sigma_invariance(tree: Tree, sigma: LabelInvolution) -> TreeInvolution | None:
    """The unique involution extending sigma, or None if the tree is not invariant."""
    if tree.n != sigma.n:
        raise ValueError("label count mismatch")
    m = find_isomorphism(tree, tree, sigma.action)
    if m is None:
        return None
    iota_F = {f: g for g, f in m.phi_F.items()}
    return TreeInvolution(tree, sigma, iota_F, dict(m.phi_V))


def enumerate_sigma_invariant_trees(sigma: LabelInvolution, threads: int = 1) -> list[tuple[Tree, TreeInvolution]]:
    out = []
    for t in enumerate_stable_trees(sigma.n, threads=threads):
        iota = sigma_invariance(t, sigma)
        if iota is not None:
            out.append((t, iota))
    return out


def is_sigma_invariant(tree: Tree, sigma: LabelInvolution) -> bool:
    return canonical_form(conjugate_tree(tree, sigma)) == canonical_form(tree)
