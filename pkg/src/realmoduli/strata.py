"""Contraction of o-planar trees and the stratification poset."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .planar import (
    EMPTY,
    NonEmpty,
    OPlanar,
    UPlanar,
    canonical_rotation,
    ending_with,
    enumerate_uplanar,
    to_uplanar,
)
from .real_structure import LabelInvolution, TreeInvolution, enumerate_sigma_invariant_trees, sigma_invariance
from .tree_core import (
    Tree,
    TreeMorphism,
    canonical_form,
    contract_edges_with_map,
    describe,
    find_isomorphism,
    to_json as tree_json,
)


class StrataError(ValueError):
    pass


class NonInvariantEdgeSet(StrataError):
    pass


class MalformedCase(StrataError):
    pass


class NotAdjacent(StrataError):
    pass


def _contract_orbit(gamma: Tree, iota: TreeInvolution, o: OPlanar, orbit) -> list[tuple[Tree, TreeInvolution, OPlanar]]:
    n = gamma.n
    tau, vmap = contract_edges_with_map(gamma, orbit)
    tiota = sigma_invariance(tau, iota.sigma)
    if tiota is None:
        raise MalformedCase("contraction lost sigma-invariance")

    if len(orbit) == 1:
        f, g = orbit[0]
        if iota.special_invariant_edge == (f, g):
            # isolated real node: both the non-empty and the empty real part
            p = o.plus_flag
            if p is None:
                raise MalformedCase("special edge without a sign")
            q = gamma.j(p)
            v = vmap[gamma.boundary(p)]
            plus = frozenset(h for h in gamma.flags_at(gamma.boundary(p)) if h != p)
            minus = frozenset(h for h in gamma.flags_at(gamma.boundary(q)) if h != q)
            return [
                (tau, tiota, OPlanar(((v, NonEmpty(plus, minus, ())),))),
                (tau, tiota, OPlanar(((v, EMPTY),))),
            ]
        va, vb = gamma.boundary(f), gamma.boundary(g)
        if va not in iota.real_vertices or vb not in iota.real_vertices:
            raise MalformedCase("invariant edge with a non-real endpoint")
        da, db = o.at(va), o.at(vb)
        if da is EMPTY or db is EMPTY:
            raise MalformedCase("empty real part on a vertex with real flags")
        seq = ending_with(da.order, f)[:-1] + ending_with(db.order, g)[:-1]
        merged = NonEmpty(da.plus | db.plus, da.minus | db.minus, canonical_rotation(seq, n))
        data = {}
        for v, d in o.vertex_data:
            if v not in (va, vb):
                data[vmap[v]] = d
        data[vmap[va]] = merged
        return [(tau, tiota, OPlanar(tuple(sorted(data.items()))))]

    if len(orbit) != 2:
        raise MalformedCase("orbit of size > 2")
    (f1, g1), (f2, g2) = orbit
    hat = None
    for a, b, c, d in ((f1, g1, f2, g2), (g1, f1, g2, f2), (f1, g1, g2, f2), (g1, f1, f2, g2)):
        if gamma.boundary(a) in iota.real_vertices and gamma.boundary(a) == gamma.boundary(c):
            hat = (a, b, c, d)
            break
    if hat is None:
        # (b-2): nothing real is touched
        data = tuple(sorted((vmap[v], d) for v, d in o.vertex_data))
        return [(tau, tiota, OPlanar(data, o.plus_flag))]
    a, b, c, d = hat
    vh = gamma.boundary(a)
    dh = o.at(vh)
    new = dict((vmap[v], x) for v, x in o.vertex_data)
    if dh is not EMPTY:
        plus, minus = set(dh.plus), set(dh.minus)
        for near, far in ((a, b), (c, d)):
            side = plus if near in dh.plus else minus
            side.discard(near)
            side.update(h for h in gamma.flags_at(gamma.boundary(far)) if h != far)
        new[vmap[vh]] = NonEmpty(frozenset(plus), frozenset(minus), dh.order)
    return [(tau, tiota, OPlanar(tuple(sorted(new.items())), o.plus_flag))]


def contract_oplanar(gamma: Tree, iota: TreeInvolution, o_hat: OPlanar, edge_set) -> list[tuple[Tree, TreeInvolution, OPlanar]]:
    """Contract an iota-invariant edge set orbit by orbit (ascending smallest flag)."""
    edges = {tuple(sorted(e)) for e in edge_set}
    for e in edges:
        img = gamma.edge_of(iota.iota_F[e[0]])
        if img not in edges:
            raise NonInvariantEdgeSet(e)
    orbits = [orb for orb in iota.edge_orbits() if orb[0] in edges]
    states = [(gamma, iota, o_hat, orbits)]
    done = []
    while states:
        g, io, o, rest = states.pop()
        if not rest:
            done.append((g, io, o))
            continue
        orb, tail = rest[0], rest[1:]
        for t, ti, to in _contract_orbit(g, io, o, orb):
            states.append((t, ti, to, tail))
    done.sort(key=lambda x: x[2].sort_key())
    return done


def transport(o: OPlanar, m: TreeMorphism) -> OPlanar:
    """Move o-planar data along an isomorphism m: source -> target."""
    fwd = {src: tgt for tgt, src in m.phi_F.items()}
    n = m.target.n
    data = []
    for v, d in o.vertex_data:
        w = m.phi_V[v]
        if d is EMPTY:
            data.append((w, EMPTY))
        else:
            data.append((w, NonEmpty(frozenset(fwd[f] for f in d.plus), frozenset(fwd[f] for f in d.minus),
                                     canonical_rotation([fwd[f] for f in d.order], n))))
    pf = fwd[o.plus_flag] if o.plus_flag is not None else None
    return OPlanar(tuple(sorted(data)), pf)


def _identity_iso(src: Tree, dst: Tree) -> TreeMorphism:
    m = find_isomorphism(src, dst, {i: i for i in range(1, src.n + 1)})
    if m is None:
        raise NotAdjacent("trees are not isomorphic")
    return m


def contracted_edges(gamma: Tree, tau: Tree) -> list[tuple[int, int]]:
    """Edges of gamma whose split is absent from tau."""
    keep = tau.splits()
    sides = gamma.far_sides()
    out = []
    for f, g in gamma.edges:
        s = sides[f] if gamma.n not in sides[f] else sides[g]
        if s not in keep:
            out.append((f, g))
    return out


def contract_to(gamma: Tree, iota: TreeInvolution, o_hat: OPlanar, tau: Tree) -> list[OPlanar]:
    """All o-planar structures on tau obtained by contracting (gamma, o_hat) onto tau."""
    if not tau.splits() <= gamma.splits():
        raise NotAdjacent("tau is not a contraction of gamma")
    out = []
    for t, _, o in contract_oplanar(gamma, iota, o_hat, contracted_edges(gamma, tau)):
        out.append(transport(o, _identity_iso(t, tau)))
    return out


def delta_lift(tau: Tree, o: OPlanar, gamma: Tree, u_hat: UPlanar, iota_gamma: TreeInvolution) -> OPlanar:
    """The unique lift of u_hat on gamma whose contraction yields (tau, o)."""
    hits = [oh for oh in u_hat.lifts() if o in contract_to(gamma, iota_gamma, oh, tau)]
    if not hits:
        raise NotAdjacent("no lift contracts to the given structure")
    if len(hits) > 1:
        raise MalformedCase(f"{len(hits)} lifts contract to the same structure")
    return hits[0]


def is_boundary(gamma: Tree, iota_gamma: TreeInvolution, u_hat: UPlanar, tau: Tree, iota_tau: TreeInvolution, u: UPlanar) -> bool:
    if not tau.splits() <= gamma.splits():
        return False
    for oh in u_hat.lifts():
        for o in contract_to(gamma, iota_gamma, oh, tau):
            if to_uplanar(o, tau, iota_tau) == u:
                return True
    return False


@dataclass(frozen=True)
class Stratum:
    tree: Tree
    iota: TreeInvolution = field(compare=False, hash=False, repr=False)
    u: UPlanar
    dim: int

    def label(self) -> str:
        return describe(self.tree)

    def to_json(self, sid: int | None = None) -> dict:
        out = {"dim": self.dim, "tree": tree_json(self.tree), "u": self.u.to_json()}
        if sid is not None:
            out = {"id": sid, **out}
        return out


@dataclass
class StratifiedComplex:
    sigma: LabelInvolution
    strata: list[Stratum]
    adjacency: set[tuple[int, int]]  # (lower id, upper id), single orbit contractions
    index: dict = field(default_factory=dict, repr=False)
    trees: dict = field(default_factory=dict, repr=False)

    def by_dim(self) -> dict[int, int]:
        out: dict[int, int] = defaultdict(int)
        for s in self.strata:
            out[s.dim] += 1
        return dict(sorted(out.items()))

    def upper(self, sid: int) -> list[int]:
        return sorted(b for a, b in self.adjacency if a == sid)

    def lower(self, sid: int) -> list[int]:
        return sorted(a for a, b in self.adjacency if b == sid)

    def closure(self) -> set[tuple[int, int]]:
        """Transitive closure of the adjacency (strict)."""
        ups = defaultdict(set)
        for a, b in self.adjacency:
            ups[a].add(b)
        out = set()
        for s in range(len(self.strata)):
            stack, seen = list(ups[s]), set()
            while stack:
                t = stack.pop()
                if t in seen:
                    continue
                seen.add(t)
                stack.extend(ups[t])
            out.update((s, t) for t in seen)
        return out

    def stratum_id(self, tree: Tree, u: UPlanar) -> int:
        return self.index[(canonical_form(tree), u)]

    def to_json(self) -> dict:
        return {
            "sigma": self.sigma.to_json(),
            "strata": [s.to_json(i) for i, s in enumerate(self.strata)],
            "adjacency": sorted([a, b] for a, b in self.adjacency),
        }

    def to_dot(self) -> str:
        lines = ["digraph poset {", "  rankdir=BT;"]
        for i, s in enumerate(self.strata):
            lines.append(f'  s{i} [label="{i}: {s.label()} d={s.dim}"];')
        for a, b in sorted(self.adjacency):
            lines.append(f"  s{a} -> s{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_poset(sigma: LabelInvolution, threads: int = 1) -> StratifiedComplex:
    trees = enumerate_sigma_invariant_trees(sigma, threads=threads)
    strata: list[Stratum] = []
    index: dict = {}
    by_code: dict = {}
    for t, iota in trees:
        code = canonical_form(t)
        by_code[code] = (t, iota)
        for u in enumerate_uplanar(t, iota):
            index[(code, u)] = len(strata)
            strata.append(Stratum(t, iota, u, sigma.n - 3 - len(t.edges)))
    adjacency: set[tuple[int, int]] = set()
    for sid, s in enumerate(strata):
        g, io = s.tree, s.iota
        for orb in io.edge_orbits():
            for oh in s.u.lifts():
                for t, _, o in contract_oplanar(g, io, oh, orb):
                    code = canonical_form(t)
                    tc, tio = by_code[code]
                    oc = transport(o, _identity_iso(t, tc))
                    adjacency.add((sid, index[(code, to_uplanar(oc, tc, tio))]))
    return StratifiedComplex(sigma, strata, adjacency, index, by_code)
