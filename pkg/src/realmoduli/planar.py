"""O-planar and u-planar decorations of sigma-invariant trees.

At a real vertex an o-planar datum is either a ``NonEmpty`` record (which
non-real flags point into the upper half plane, plus a cyclic order of the
real flags) or the marker ``EMPTY`` for a real component without real
points.  When no vertex is real, the datum is the choice of which flag of
the special invariant edge carries the sign ``+``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from math import factorial
from typing import Iterator, Union

from .real_structure import LabelInvolution, TreeInvolution
from .tree_core import Tree


class PlanarError(ValueError):
    pass


class EmptyRealPartVertex(PlanarError):
    pass


class NoSuchPermutation(PlanarError):
    pass


def canonical_rotation(seq, n: int | None = None) -> tuple[int, ...]:
    """Rotate a cyclic sequence so tail n (if present) or else its minimum comes first."""
    seq = tuple(seq)
    if not seq:
        return seq
    head = n if n is not None and n in seq else min(seq)
    i = seq.index(head)
    return seq[i:] + seq[:i]


def ending_with(order: tuple[int, ...], last: int) -> tuple[int, ...]:
    """Linearize a cyclic order so that ``last`` is its final element."""
    i = order.index(last)
    return order[i + 1:] + order[:i + 1]


@dataclass(frozen=True, order=True)
class NonEmpty:
    plus: frozenset
    minus: frozenset
    order: tuple

    def reversed(self, n: int | None = None) -> "NonEmpty":
        return NonEmpty(self.minus, self.plus, canonical_rotation(self.order[::-1], n))

    def key(self):
        return (tuple(sorted(self.plus)), self.order)

    def __repr__(self):
        return f"NonEmpty(+{sorted(self.plus)}, {list(self.order)})"


class _Empty:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "EMPTY"

    def __reduce__(self):
        return (_Empty, ())

    def key(self):
        return ((-1,), ())


EMPTY = _Empty()
VertexDatum = Union[NonEmpty, _Empty]


@dataclass(frozen=True)
class OPlanar:
    """Per-real-vertex data, or the sign of the special edge when no vertex is real."""

    vertex_data: tuple = ()
    plus_flag: int | None = None

    def at(self, v: int) -> VertexDatum:
        for w, d in self.vertex_data:
            if w == v:
                return d
        raise KeyError(v)

    def replaced(self, v: int, datum: VertexDatum) -> "OPlanar":
        return OPlanar(tuple((w, datum if w == v else d) for w, d in self.vertex_data), self.plus_flag)

    @property
    def is_empty_real_part(self) -> bool:
        return any(d is EMPTY for _, d in self.vertex_data)

    def sort_key(self):
        return (tuple((v, d.key()) for v, d in self.vertex_data), self.plus_flag or 0)

    def to_json(self) -> dict:
        vd = {}
        for v, d in self.vertex_data:
            vd[str(v)] = "empty" if d is EMPTY else {"plus": sorted(d.plus), "order": list(d.order)}
        out: dict = {"vertex_data": vd}
        if self.plus_flag is not None:
            out["edge_signs"] = {"plus": self.plus_flag}
        return out


@dataclass(frozen=True)
class UPlanar:
    """Per-real-vertex unordered pairs {o_v, reversed o_v} (or EMPTY)."""

    vertex_data: tuple = ()
    special: tuple | None = None  # special invariant edge when no vertex is real
    n: int = field(default=0, compare=False)

    def lifts(self) -> list[OPlanar]:
        if self.special is not None:
            f, g = self.special
            return [OPlanar((), f), OPlanar((), g)]
        verts = [v for v, _ in self.vertex_data]
        choices = [sorted(pair, key=lambda d: d.key()) if pair is not EMPTY else [EMPTY]
                   for _, pair in self.vertex_data]
        return [OPlanar(tuple(zip(verts, combo))) for combo in product(*choices)]

    def sort_key(self):
        parts = []
        for v, pair in self.vertex_data:
            parts.append((v, (0,) if pair is EMPTY else (1, tuple(sorted(d.key() for d in pair)))))
        return (tuple(parts), self.special or ())

    def to_json(self) -> dict:
        if self.special is not None:
            return {"trivial": True}
        vd = {}
        for v, pair in self.vertex_data:
            if pair is EMPTY:
                vd[str(v)] = "empty"
            else:
                d = min(pair, key=lambda x: x.key())
                vd[str(v)] = {"plus": sorted(d.plus), "order": list(d.order), "up_to_reversal": True}
        return {"vertex_data": vd}


def reverse_at(o: OPlanar, v: int, n: int | None = None) -> OPlanar:
    d = o.at(v)
    if d is EMPTY:
        raise EmptyRealPartVertex(v)
    return o.replaced(v, d.reversed(n))


def reverse_all(o: OPlanar, n: int | None = None) -> OPlanar:
    out = o
    for v, d in o.vertex_data:
        if d is not EMPTY:
            out = reverse_at(out, v, n)
    return out


def conjugate_pairs(iota: TreeInvolution, v: int) -> list[tuple[int, int]]:
    flags = iota.nonreal_flags(v)
    return sorted({tuple(sorted((f, iota.iota_F[f]))) for f in flags})


def _vertex_structures(tree: Tree, iota: TreeInvolution, v: int) -> Iterator[NonEmpty]:
    pairs = conjugate_pairs(iota, v)
    real = sorted(iota.real_flags[v])
    if real:
        head = tree.n if tree.n in real else real[0]
        rest = [f for f in real if f != head]
        orders = [(head,) + p for p in permutations(rest)]
    else:
        orders = [()]
    for picks in product(*[(a, b) for a, b in pairs]):
        plus = frozenset(picks)
        minus = frozenset(iota.iota_F[f] for f in picks)
        for order in orders:
            yield NonEmpty(plus, minus, order)


def enumerate_oplanar(tree: Tree, iota: TreeInvolution) -> list[OPlanar]:
    if not iota.real_vertices:
        f, g = iota.special_invariant_edge
        return [OPlanar((), f), OPlanar((), g)]
    verts = sorted(iota.real_vertices)
    per_vertex = [list(_vertex_structures(tree, iota, v)) for v in verts]
    out = [OPlanar(tuple(zip(verts, combo))) for combo in product(*per_vertex)]
    if len(verts) == 1 and iota.sigma.l == 0:
        out.append(OPlanar(((verts[0], EMPTY),)))
    return sorted(out, key=OPlanar.sort_key)


def to_uplanar(o: OPlanar, tree: Tree, iota: TreeInvolution) -> UPlanar:
    if not iota.real_vertices:
        return UPlanar((), iota.special_invariant_edge, tree.n)
    vd = []
    for v, d in o.vertex_data:
        vd.append((v, EMPTY if d is EMPTY else frozenset({d, d.reversed(tree.n)})))
    return UPlanar(tuple(vd), None, tree.n)


def enumerate_uplanar(tree: Tree, iota: TreeInvolution) -> list[UPlanar]:
    seen = {}
    for o in enumerate_oplanar(tree, iota):
        u = to_uplanar(o, tree, iota)
        seen.setdefault(u, None)
    return sorted(seen, key=UPlanar.sort_key)


def signed_sets(tree: Tree, iota: TreeInvolution, o: OPlanar):
    """(V+, V-, F+, F-) of an o-planar tree; all empty when signs are undefined."""
    vplus: set[int] = set()
    vminus: set[int] = set()
    if not iota.real_vertices:
        f = o.plus_flag
        g = tree.j(f)
        anchor, other = tree.boundary(f), tree.boundary(g)
        dist_a, dist_b = _distances(tree, anchor), _distances(tree, other)
        for v in tree.vertices:
            (vplus if dist_a[v] < dist_b[v] else vminus).add(v)
    else:
        for v, d in o.vertex_data:
            if d is EMPTY:
                continue
            for f in iota.nonreal_flags(v):
                g = tree.j(f)
                if g == f:
                    continue
                target = vplus if f in d.plus else vminus
                # everything behind the edge leaving v through f is non-real
                stack = [(tree.boundary(g), g)]
                while stack:
                    w, via = stack.pop()
                    target.add(w)
                    for h in tree.flags_at(w):
                        if h != via and tree.j(h) != h:
                            stack.append((tree.boundary(tree.j(h)), tree.j(h)))
    fplus = frozenset(f for f in tree.flags if tree.boundary(f) in vplus)
    fminus = frozenset(f for f in tree.flags if tree.boundary(f) in vminus)
    return frozenset(vplus), frozenset(vminus), fplus, fminus


def _distances(tree: Tree, start: int) -> dict[int, int]:
    dist = {start: 0}
    stack = [start]
    while stack:
        v = stack.pop()
        for _, _, w in tree.neighbors(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                stack.append(w)
    return dist


def _perm_sign(perm: dict[int, int]) -> int:
    seen, parity = set(), 0
    for start in perm:
        if start in seen:
            continue
        length, x = 0, start
        while x not in seen:
            seen.add(x)
            x = perm[x]
            length += 1
        parity ^= (length - 1) & 1
    return parity


def relabeling_permutation(o: OPlanar, sigma: LabelInvolution) -> dict[int, int]:
    """A sigma-commuting permutation fixing n (if l>0) carrying the base structure to o."""
    if len(o.vertex_data) != 1:
        raise PlanarError("parity is defined on one-vertex trees only")
    (_, d), = o.vertex_data
    if d is EMPTY:
        raise PlanarError("parity is not defined for an empty real part")
    k, n = sigma.k, sigma.n
    plus = sorted(d.plus)
    if len(plus) != k or any(sigma(f) not in d.minus for f in plus):
        raise NoSuchPermutation("sign partition is not sigma-equivariant")
    rho: dict[int, int] = {}
    for i, f in enumerate(plus, start=1):
        rho[i] = f
        rho[sigma(i)] = sigma(f)
    if sigma.l:
        if n not in d.order:
            raise NoSuchPermutation("tail n is not real")
        for i, f in enumerate(ending_with(d.order, n), start=2 * k + 1):
            rho[i] = f
    if sorted(rho) != sorted(rho.values()) or len(rho) != n:
        raise NoSuchPermutation("structure does not match sigma")
    return rho


def parity(o: OPlanar, sigma: LabelInvolution) -> int:
    return _perm_sign(relabeling_permutation(o, sigma))


def base_structure(sigma: LabelInvolution, vertex: int = 1) -> OPlanar:
    k, n = sigma.k, sigma.n
    plus = frozenset(range(1, k + 1))
    minus = frozenset(range(k + 1, 2 * k + 1))
    order = canonical_rotation(range(2 * k + 1, n + 1), n)
    return OPlanar(((vertex, NonEmpty(plus, minus, order)),))


def cyclically_ordered(order: tuple[int, ...], a: int, b: int, c: int) -> bool:
    """True if a, b, c occur in this cyclic order."""
    i, j, m = order.index(a), order.index(b), order.index(c)
    return (i < j < m) or (j < m < i) or (m < i < j)


def is_convention(o: OPlanar, sigma: LabelInvolution) -> bool:
    (_, d), = o.vertex_data
    k, l, n = sigma.k, sigma.l, sigma.n
    if l >= 3:
        return cyclically_ordered(d.order, 2 * k + 1, n - 1, n)
    return k in d.plus


def convention_representative(u: UPlanar, sigma: LabelInvolution) -> OPlanar:
    """The member of a one-vertex u-planar pair selected by the sign convention."""
    if len(u.vertex_data) != 1 or u.vertex_data[0][1] is EMPTY:
        raise PlanarError("convention representative needs a non-empty one-vertex structure")
    for o in u.lifts():
        if is_convention(o, sigma):
            return o
    raise PlanarError("no member satisfies the convention")


def frak_F(sigma: LabelInvolution) -> frozenset[int]:
    k, l, n = sigma.k, sigma.l, sigma.n
    if l >= 3:
        return frozenset({2 * k + 1, n - 1, n})
    return frozenset({k, 2 * k, n})


def count_oplanar_one_vertex(k: int, l: int) -> int:
    """Closed form for the number of components of the open configuration space."""
    if l > 0:
        return 2 ** k * factorial(l - 1)
    return 2 ** k + 1


def count_uplanar_one_vertex(k: int, l: int) -> int:
    if l > 0:
        return 2 ** (k - 1) * factorial(l - 1) if k >= 1 else factorial(l - 1) // 2
    return 2 ** (k - 1) + 1
