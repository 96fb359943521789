"""Codimension one strata carrying the first Stiefel-Whitney class."""
from __future__ import annotations

from dataclasses import dataclass

from .orientation import (
    WrongCase,
    edge_flags,
    frak_weight,
    pi,
    pi_closed_form,
    pi_closed_form_as_printed,
    two_vertex_context,
    wall,
)
from .planar import enumerate_uplanar
from .real_structure import LabelInvolution, enumerate_sigma_invariant_trees
from .strata import Stratum
from .tree_core import Tree, canonical_form, describe


@dataclass
class W1Cycle:
    sigma: LabelInvolution
    strata: list[Stratum]  # codimension one strata in the cycle
    trees: list[Tree]  # their underlying trees (closures of the divisors)
    walls: int  # all codimension one strata inspected

    def labels(self) -> list[str]:
        return [describe(t) for t in self.trees]

    def to_json(self) -> dict:
        return {
            "sigma": self.sigma.to_json(),
            "trees": self.labels(),
            "strata": [s.to_json() for s in self.strata],
            "walls": self.walls,
        }


def two_vertex_trees(sigma: LabelInvolution, threads: int = 1):
    for t, iota in enumerate_sigma_invariant_trees(sigma, threads=threads):
        if len(t.edges) == 1:
            yield t, iota


def w1_cycle(sigma: LabelInvolution, threads: int = 1) -> W1Cycle:
    """Walls whose two chamber orientations fail to extend (pi = 0)."""
    strata, trees, seen, walls = [], [], set(), 0
    dim = sigma.n - 4
    for t, iota in two_vertex_trees(sigma, threads):
        for u in enumerate_uplanar(t, iota):
            walls += 1
            if pi(wall(t, iota, u)) == 0:
                strata.append(Stratum(t, iota, u, dim))
                code = canonical_form(t)
                if code not in seen:
                    seen.add(code)
                    trees.append(t)
    return W1Cycle(sigma, strata, trees, walls)


def in_cycle_by_closed_form(gamma: Tree, iota, sigma: LabelInvolution, printed: bool = False) -> bool:
    """Membership from tree data alone (l > 0); ``printed`` uses the published bullets."""
    if sigma.l == 0:
        return False
    u = enumerate_uplanar(gamma, iota)[0]
    ctx = two_vertex_context(gamma, iota, u.lifts()[0])
    v = light_vertex(gamma, sigma)
    f = pi_closed_form_as_printed if printed else pi_closed_form
    return f(ctx, v) == 0


def light_vertex(gamma: Tree, sigma: LabelInvolution) -> int:
    v_e, v_E, _, _ = edge_flags(gamma)
    light = [v for v in (v_e, v_E) if frak_weight(gamma, sigma, v) <= 1]
    if len(light) != 1:
        raise WrongCase("light vertex is not unique")
    return light[0]


def is_orientable(sigma: LabelInvolution, threads: int = 1) -> bool:
    return not w1_cycle(sigma, threads).strata
