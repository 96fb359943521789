"""Euler characteristics of the real moduli spaces and their double covers.

Each stratum is a product of one chamber per real vertex and one complex
moduli space per conjugate pair of non-real vertices, so its compactly
supported Euler characteristic is a product.  Summing over a finite
stratification of a compact space gives the ordinary Euler characteristic.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial, prod
from typing import Optional

from .double_cover import DoubleCover, build_cover, connected_components, cover_strata
from .planar import EMPTY, OPlanar
from .real_structure import LabelInvolution, TreeInvolution
from .strata import Stratum, StratifiedComplex, build_poset
from .sw_class import is_orientable
from .tree_core import Tree


class UnsupportedShape(ValueError):
    pass


class NotASurface(ValueError):
    pass


def chi_c_config(c: int, j: int, punctures: int = 0, step: int = 1) -> int:
    """chi_c of j ordered distinct points in a space of chi_c = c minus ``punctures`` points.

    ``step`` is how many points each placed point removes for the next one
    (2 when points come with an antipode).
    """
    return prod(c - punctures - step * i for i in range(j))


def chi_c_complex_vertex(m: int) -> int:
    """chi_c of the open moduli space of m points on the complex line."""
    if m < 3:
        raise UnsupportedShape(f"unstable vertex of valency {m}")
    return (-1) ** (m - 3) * factorial(m - 3)


def chi_c_real_vertex(pairs: int, reals: int, empty: bool = False) -> int:
    """chi_c of one chamber at a real vertex.

    ``pairs`` conjugate pairs of points (one of each in the upper half plane),
    ``reals`` points on the real circle in a fixed cyclic order.
    """
    if 2 * pairs + reals < 3:
        raise UnsupportedShape("unstable real vertex")
    if empty:
        if reals:
            raise UnsupportedShape("empty real part with real points")
        # fix one point, rotate the second onto a meridian, the rest avoid antipodal pairs
        return -chi_c_config(2, pairs - 2, punctures=4, step=2)
    if reals >= 3:
        # three real points pinned; the others fill an open simplex
        return chi_c_config(1, pairs) * (-1) ** (reals - 3)
    if reals == 0:
        # one point at i, the next on a ray from it
        return -chi_c_config(1, pairs - 2, punctures=2)
    # one point pinned at i; for two reals the point is only pinned up to an open arc
    return chi_c_config(1, pairs - 1, punctures=1) * (-1) ** (reals - 1)


def chi_c_parts(tree: Tree, iota: TreeInvolution, o: OPlanar) -> list[int]:
    factors = []
    for v in sorted(iota.real_vertices):
        d = o.at(v)
        pairs = len(iota.nonreal_flags(v)) // 2
        reals = len(iota.real_flags[v])
        factors.append(chi_c_real_vertex(pairs, reals, empty=d is EMPTY))
    for v in sorted(tree.vertices):
        w = iota.iota_V[v]
        if w != v and v < w:
            factors.append(chi_c_complex_vertex(tree.valency(v)))
    return factors


def chi_c_stratum(stratum: Stratum) -> int:
    o = stratum.u.lifts()[0]
    return prod(chi_c_parts(stratum.tree, stratum.iota, o))


def euler_char(cx: StratifiedComplex | DoubleCover) -> int:
    if isinstance(cx, DoubleCover):
        total = 0
        for code, u, dim in cover_strata(cx):
            t, io = cx.trees[code]
            total += prod(chi_c_parts(t, io, u.lifts()[0]))
        return total
    return sum(chi_c_stratum(s) for s in cx.strata)


def cw_euler_char(cx: StratifiedComplex) -> int:
    """Alternating cell count; a valid Euler characteristic only when every stratum is an open cell."""
    if cx.sigma.k:
        raise UnsupportedShape("strata with conjugate pairs are not cells")
    return sum((-1) ** s.dim for s in cx.strata)


@dataclass
class SurfaceReport:
    sigma: LabelInvolution
    cover: bool
    orientable: bool
    chi: int
    genus: Optional[int]  # orientable genus, when connected and orientable
    components: int = 1
    crosscaps: Optional[int] = None  # non-orientable genus

    def to_json(self) -> dict:
        return {
            "sigma": self.sigma.to_json(),
            "cover": self.cover,
            "orientable": self.orientable,
            "chi": self.chi,
            "genus": self.genus,
            "components": self.components,
            "crosscaps": self.crosscaps,
        }


def classify_surface(sigma: LabelInvolution, cover: bool = False) -> SurfaceReport:
    if sigma.n != 5:
        raise NotASurface(f"dimension {sigma.n - 3}")
    if cover:
        cv = build_cover(sigma)
        chi = euler_char(cv)
        comps = connected_components(cv)
        orientable = True
    else:
        chi = euler_char(build_poset(sigma))
        comps = 1
        orientable = is_orientable(sigma)
    genus = crosscaps = None
    if comps == 1:
        if orientable:
            if chi % 2:
                raise NotASurface(f"odd chi {chi} for an orientable surface")
            genus = (2 - chi) // 2
        else:
            crosscaps = 2 - chi
    return SurfaceReport(sigma, cover, orientable, chi, genus, comps, crosscaps)


def dims_histogram(cx: StratifiedComplex | DoubleCover) -> dict[int, int]:
    out: dict[int, int] = {}
    if isinstance(cx, DoubleCover):
        for _, _, d in cover_strata(cx):
            out[d] = out.get(d, 0) + 1
    else:
        out = cx.by_dim()
    return dict(sorted(out.items()))
