"""Floating point check of the orientation signs.

Points of the projective line are kept as homogeneous pairs ``(a, b)`` so
that the point at infinity needs no special casing.  A chamber is given
coordinates by moving a configuration into its normal position with a
real (or, for the empty real part, antipodal-compatible) Moebius map.  A
boundary stratum is parametrized vertex by vertex, smoothed with the family
``(z - x_fe) w + t = 0``, and the sign of the Jacobian of the resulting map
into chamber coordinates is the quantity compared with the parity tables.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .planar import EMPTY, NonEmpty, OPlanar, ending_with
from .real_structure import LabelInvolution, TreeInvolution
from .tree_core import Tree

INF = np.array([1.0 + 0j, 0j])
STEP = 1e-6
DET_FLOOR = 1e-9


class OracleError(ValueError):
    pass


class IllConditioned(OracleError):
    pass


class DegenerateT(OracleError):
    pass


def default_seed() -> int:
    return int(os.environ.get("RMS_SEED", "0"))


# projective helpers

def hom(z) -> np.ndarray:
    if z is None or (isinstance(z, float) and np.isinf(z)):
        return INF.copy()
    return np.array([complex(z), 1.0 + 0j])


def aff(p: np.ndarray) -> complex:
    if abs(p[1]) < 1e-300:
        raise OracleError("point at infinity has no affine coordinate")
    return p[0] / p[1]


def _L(p, q) -> complex:
    return p[0] * q[1] - p[1] * q[0]


def to_zero_one_inf(p0, p1, pinf) -> np.ndarray:
    """Moebius matrix sending p0, p1, pinf to 0, 1, infinity."""
    return np.array([
        [_L(p1, pinf) * p0[1], -_L(p1, pinf) * p0[0]],
        [_L(p1, p0) * pinf[1], -_L(p1, p0) * pinf[0]],
    ])


def _real_direction(p) -> np.ndarray:
    # a real representative of a real projective point
    idx = 0 if abs(p[0]) >= abs(p[1]) else 1
    q = p / p[idx]
    return np.real(q)


def real_to_inf_and_i(pa, pz) -> np.ndarray:
    """Orientation preserving real Moebius matrix sending real pa to infinity and pz to i."""
    a, b = _real_direction(pa)
    m1 = np.array([[a, b], [-b, a]], dtype=complex)
    w = aff(m1 @ pz)
    if w.imag <= 0:
        raise OracleError("point not in the upper half plane")
    m2 = np.array([[1.0, -w.real], [0.0, w.imag]], dtype=complex)
    return m2 @ m1


def real_to_zero_and_i(pa, pz) -> np.ndarray:
    m = real_to_inf_and_i(pa, pz)
    return np.array([[0, -1], [1, 0]], dtype=complex) @ m


def apply(m: np.ndarray, config: dict[int, np.ndarray]) -> dict[int, np.ndarray]:
    return {f: m @ p for f, p in config.items()}


def neg_identity(config: dict[int, np.ndarray]) -> dict[int, np.ndarray]:
    """The map z -> -z: reverses the real circle and swaps the half planes."""
    return apply(np.array([[-1, 0], [0, 1]], dtype=complex), config)


# chamber coordinates of one-vertex structures

@dataclass(frozen=True)
class CellChart:
    """Normal position of a one-vertex chamber and the sign of its reference form."""

    case: str  # "A", "B", "C" or "D"
    sign: int


def cell_case(o: OPlanar, sigma: LabelInvolution) -> CellChart:
    (_, d), = o.vertex_data
    if d is EMPTY:
        return CellChart("D", -1)
    if sigma.l >= 3:
        return CellChart("A", 1)
    if sigma.l >= 1:
        return CellChart("B", 1)
    return CellChart("C", 1)


def _pick(d: NonEmpty, a: int, b: int) -> int:
    return a if a in d.plus else b


def cell_coords(config: dict[int, np.ndarray], o: OPlanar, sigma: LabelInvolution) -> np.ndarray:
    """Free coordinates of the normal position; complex points give (Re, Im)."""
    (_, d), = o.vertex_data
    k, l, n = sigma.k, sigma.l, sigma.n
    out: list[float] = []
    if d is EMPTY:
        pk = aff(config[k])
        t1 = np.array([[1, -pk], [np.conj(pk), 1]], dtype=complex)
        w = aff(t1 @ config[k - 1])
        rot = np.array([[-1j * abs(w) / w, 0], [0, 1]], dtype=complex)
        h = np.array([[1, 1j], [1j, 1]], dtype=complex)
        m = h @ rot @ t1
        for a in range(1, k - 1):
            z = aff(m @ config[a])
            out += [z.real, z.imag]
        out.append(aff(m @ config[k - 1]).imag)
        return np.array(out)
    if l >= 3:
        lin = ending_with(d.order, n)
        m = to_zero_one_inf(config[lin[0]], config[lin[-2]], config[n])
        for a in sorted(d.plus):
            z = aff(m @ config[a])
            out += [z.real, z.imag]
        for f in lin[1:-2]:
            out.append(aff(m @ config[f]).real)
        return np.array(out)
    if l >= 1:
        a = _pick(d, k, 2 * k)
        m = real_to_inf_and_i(config[n], config[a])
        for b in sorted(d.plus - {a}):
            z = aff(m @ config[b])
            out += [z.real, z.imag]
        if l == 2:
            out.append(aff(m @ config[2 * k + 1]).real)
        return np.array(out)
    a = _pick(d, k, 2 * k)
    b = _pick(d, k - 1, 2 * k - 1)
    pa = aff(config[a])
    m1 = np.array([[1, -pa.real], [0, pa.imag]], dtype=complex)
    cay = np.array([[1, -1j], [1, 1j]], dtype=complex)
    wb = aff(cay @ m1 @ config[b])
    rot = np.array([[-abs(wb) / wb, 0], [0, 1]], dtype=complex)
    m = np.linalg.inv(cay) @ rot @ cay @ m1
    for c in sorted(d.plus - {a, b}):
        z = aff(m @ config[c])
        out += [z.real, z.imag]
    out.append(aff(m @ config[b]).imag)
    return np.array(out)


def _upper(rng, count: int, avoid: list[complex]) -> list[complex]:
    pts: list[complex] = []
    while len(pts) < count:
        z = complex(rng.uniform(-2.0, 2.0), rng.uniform(0.3, 2.0))
        if all(abs(z - w) > 0.25 for w in pts + avoid):
            pts.append(z)
    return pts


def _sorted_gap(rng, count: int, lo: float, hi: float, gap: float = 0.08) -> list[float]:
    while True:
        xs = sorted(rng.uniform(lo, hi, size=count))
        pts = [lo] + xs + [hi]
        if all(b - a > gap for a, b in zip(pts, pts[1:])):
            return list(xs)


def sample_normal_config(o: OPlanar, sigma: LabelInvolution, seed: int | None = None) -> dict[int, np.ndarray]:
    """A configuration in the normal position of the chamber of o."""
    rng = np.random.default_rng(default_seed() if seed is None else seed)
    (_, d), = o.vertex_data
    k, l, n = sigma.k, sigma.l, sigma.n
    cfg: dict[int, np.ndarray] = {}
    if d is EMPTY:
        lam = rng.uniform(-0.8, 0.8)
        while abs(lam) < 0.1:
            lam = rng.uniform(-0.8, 0.8)
        fixed = {k: 1j, k - 1: lam * 1j}
        # antipodal map z -> -1/conj(z); keep free points away from the pinned ones and their antipodes
        avoid = [1j, -1j, lam * 1j, 1j / lam]
        free: list[complex] = []
        while len(free) < k - 2:
            z = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
            ant = -1 / np.conj(z)
            if all(abs(z - w) > 0.2 and abs(ant - w) > 0.2 for w in avoid + free) and abs(z - ant) > 0.2:
                free.append(z)
                avoid.append(ant)
        for i, z in enumerate(free, start=1):
            fixed[i] = z
        for a, z in list(fixed.items()):
            cfg[a] = hom(z)
            cfg[a + k] = hom(-1 / np.conj(z))
        return cfg
    if l >= 3:
        lin = ending_with(d.order, n)
        xs = _sorted_gap(rng, l - 3, 0.0, 1.0)
        cfg[lin[0]] = hom(0.0)
        cfg[lin[-2]] = hom(1.0)
        cfg[n] = INF.copy()
        for f, x in zip(lin[1:-2], xs):
            cfg[f] = hom(x)
        zs = _upper(rng, k, [])
        for a, z in zip(sorted(d.plus), zs):
            cfg[a] = hom(z)
            cfg[sigma(a)] = hom(np.conj(z))
        return cfg
    if l >= 1:
        a = _pick(d, k, 2 * k)
        cfg[n] = INF.copy()
        cfg[a] = hom(1j)
        cfg[sigma(a)] = hom(-1j)
        rest = sorted(d.plus - {a})
        for b, z in zip(rest, _upper(rng, len(rest), [1j])):
            cfg[b] = hom(z)
            cfg[sigma(b)] = hom(np.conj(z))
        if l == 2:
            cfg[2 * k + 1] = hom(rng.uniform(-2.0, 2.0))
        return cfg
    a = _pick(d, k, 2 * k)
    b = _pick(d, k - 1, 2 * k - 1)
    lam = rng.uniform(0.15, 0.85)
    cfg[a], cfg[sigma(a)] = hom(1j), hom(-1j)
    cfg[b], cfg[sigma(b)] = hom(lam * 1j), hom(-lam * 1j)
    rest = sorted(d.plus - {a, b})
    for c, z in zip(rest, _upper(rng, len(rest), [1j, lam * 1j])):
        cfg[c] = hom(z)
        cfg[sigma(c)] = hom(np.conj(z))
    return cfg


def realized_structure(config: dict[int, np.ndarray], sigma: LabelInvolution, n: int) -> tuple[frozenset, tuple]:
    """Read off (F+, cyclic real order) from a configuration for the structure z -> conj(z)."""
    plus = set()
    reals = []
    for f, p in config.items():
        if abs(p[1]) < 1e-14:
            reals.append((np.inf, f))
            continue
        z = aff(p)
        if abs(z.imag) < 1e-12:
            reals.append((z.real, f))
        elif z.imag > 0:
            plus.add(f)
    order = tuple(f for _, f in sorted(reals))
    from .planar import canonical_rotation

    return frozenset(plus), canonical_rotation(order, n)


# vertex charts of two-vertex boundary strata

@dataclass
class VertexChart:
    """Chart of a real vertex: which flags are pinned where and which are free."""

    flags: tuple[int, ...]
    plus: tuple[int, ...]  # free complex flags, sorted
    reals: tuple[int, ...]  # free real flags, in increasing position
    pins: dict[int, complex | None]  # None means infinity
    anchor: int
    rule: str  # "three" or "pair"


def vertex_chart(gamma: Tree, iota: TreeInvolution, v: int, d: NonEmpty, anchor: int, anchor_at_inf: bool) -> VertexChart:
    """Normalization of a real vertex: three real pins, or one real pin and a pair at +-i."""
    real = iota.real_flags[v]
    if len(real) >= 3:
        lin = ending_with(d.order, anchor)
        if anchor_at_inf:
            pins = {lin[0]: 0.0, lin[-2]: 1.0, anchor: None}
        else:
            pins = {anchor: 0.0, lin[0]: 1.0, lin[-2]: None}
        free_real = tuple(lin[1:-2])
        cplx = tuple(sorted(d.plus))
        rule = "three"
    else:
        alpha = max(d.plus)
        pins = {anchor: None if anchor_at_inf else 0.0, alpha: 1j}
        cplx = tuple(sorted(d.plus - {alpha}))
        free_real = tuple(f for f in sorted(real) if f != anchor)
        rule = "pair"
    return VertexChart(gamma.flags_at(v), cplx, free_real, pins, anchor, rule)


def chart_dim(ch: VertexChart) -> int:
    return 2 * len(ch.plus) + len(ch.reals)


def chart_place(ch: VertexChart, iota: TreeInvolution, w: np.ndarray) -> dict[int, np.ndarray]:
    """Positions of all flags of the vertex from free coordinates."""
    cfg: dict[int, np.ndarray] = {}
    for f, z in ch.pins.items():
        cfg[f] = hom(z)
        if z is not None and abs(np.imag(z)) > 0:
            cfg[iota.iota_F[f]] = hom(np.conj(z))
    i = 0
    for f in ch.plus:
        z = complex(w[i], w[i + 1])
        i += 2
        cfg[f] = hom(z)
        cfg[iota.iota_F[f]] = hom(np.conj(z))
    for f in ch.reals:
        cfg[f] = hom(w[i])
        i += 1
    return cfg


def chart_read(ch: VertexChart, cfg: dict[int, np.ndarray]) -> np.ndarray:
    """Inverse of chart_place: normalize a configuration of the vertex and read coordinates."""
    if ch.rule == "three":
        inv = {("inf" if z is None else z): f for f, z in ch.pins.items()}
        m = to_zero_one_inf(cfg[inv[0.0]], cfg[inv[1.0]], cfg[inv["inf"]])
    else:
        alpha = next(f for f, z in ch.pins.items() if z == 1j)
        if ch.pins[ch.anchor] is None:
            m = real_to_inf_and_i(cfg[ch.anchor], cfg[alpha])
        else:
            m = real_to_zero_and_i(cfg[ch.anchor], cfg[alpha])
    out: list[float] = []
    for f in ch.plus:
        z = aff(m @ cfg[f])
        out += [z.real, z.imag]
    for f in ch.reals:
        out.append(aff(m @ cfg[f]).real)
    return np.array(out)


def sample_chart(ch: VertexChart, rng) -> np.ndarray:
    pinned = [complex(z) for z in ch.pins.values() if z is not None]
    out: list[float] = []
    for z in _upper(rng, len(ch.plus), [z for z in pinned if z.imag > 0]):
        out += [z.real, z.imag]
    if ch.rule == "three":
        lo, hi = (0.0, 1.0) if ch.pins[ch.anchor] is None else (1.0, 6.0)
        out += _sorted_gap(rng, len(ch.reals), lo, hi)
    else:
        for _ in ch.reals:
            x = rng.uniform(0.3, 2.5) * rng.choice([-1.0, 1.0])
            out.append(x)
    return np.array(out)


# smoothing of a real node between two real vertices

@dataclass
class TwoVertexSetup:
    gamma: Tree
    iota: TreeInvolution
    delta: OPlanar
    v_e: int
    v_E: int  # the vertex away from tail n
    f_e: int
    f_E: int
    chart_e: VertexChart
    chart_E: VertexChart


def deform_family(setup: TwoVertexSetup, params: np.ndarray) -> dict[int, np.ndarray]:
    """Configuration on the smoothed curve; params = (t, W_vE, W_ve)."""
    t = params[0]
    if t == 0:
        raise DegenerateT("t = 0 is the nodal curve")
    dE = chart_dim(setup.chart_E)
    ce = chart_place(setup.chart_e, setup.iota, params[1 + dE:])
    cE = chart_place(setup.chart_E, setup.iota, params[1:1 + dE])
    xfe = aff(ce[setup.f_e]).real
    cfg = {f: p for f, p in ce.items() if f != setup.f_e}
    for f, p in cE.items():
        if f != setup.f_E:
            # z = x_fe - t / w, homogeneous
            cfg[f] = np.array([xfe * p[0] - t * p[1], p[0]])
    return cfg


def jacobian(fun, x: np.ndarray, step: float = STEP) -> np.ndarray:
    cols = []
    for j in range(len(x)):
        e = np.zeros_like(x)
        e[j] = step
        cols.append((fun(x + e) - fun(x - e)) / (2 * step))
    return np.array(cols).T


def _signed_det(jac: np.ndarray) -> tuple[int, float]:
    # columns scaled to unit length so the magnitude test is scale free
    if jac.size == 0:
        return 1, 1.0
    det = np.linalg.det(jac / np.linalg.norm(jac, axis=0))
    return (1 if det > 0 else -1), abs(det)


@dataclass
class SignSample:
    sign: int
    det: float  # after column scaling
    raw_det: float


# codimension one walls

class WallFamily:
    """A neighbourhood of a codimension one stratum, parametrized by (t, W).

    ``config(params)`` returns a configuration already moved to the standard
    real structure of the side it lies on (complex conjugation when the
    real part is non-empty, z -> -1/conj(z) otherwise).
    """

    def __init__(self, gamma: Tree, iota: TreeInvolution, delta: OPlanar):
        if len(gamma.vertices) != 2:
            raise OracleError("expected a two-vertex tree")
        self.gamma, self.iota, self.delta = gamma, iota, delta
        self.sigma = iota.sigma
        n = gamma.n
        self.v_e = gamma.boundary(n)
        (f, g), = gamma.edges
        self.f_e, self.f_E = (f, g) if gamma.boundary(f) == self.v_e else (g, f)
        self.v_E = gamma.boundary(self.f_E)
        if len(iota.real_vertices) == 2:
            self.kind = "real"
            if self.sigma.l > 0:
                self.chart_e = vertex_chart(gamma, iota, self.v_e, delta.at(self.v_e), n, True)
            else:
                self.chart_e = vertex_chart(gamma, iota, self.v_e, delta.at(self.v_e), self.f_e, False)
            self.chart_E = vertex_chart(gamma, iota, self.v_E, delta.at(self.v_E), self.f_E, False)
            self.dims = (chart_dim(self.chart_E), chart_dim(self.chart_e))
        elif not iota.real_vertices:
            self.kind = "node"
            p = delta.plus_flag
            if p is None:
                raise OracleError("isolated node without a sign")
            self.node = p
            self.v_plus = gamma.boundary(p)
            k = self.sigma.k
            tails = [h for h in gamma.flags_at(self.v_plus) if h != p]
            self.pin_a = k if k in tails else 2 * k
            self.pin_b = k - 1 if k - 1 in tails else 2 * k - 1
            self.free = tuple(sorted(h for h in tails if h not in (self.pin_a, self.pin_b)))
            self.dims = (2 * len(self.free),)
        else:
            raise OracleError("real vertex count must be 0 or 2")

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def sample(self, rng) -> np.ndarray:
        if self.kind == "real":
            return np.concatenate([sample_chart(self.chart_E, rng), sample_chart(self.chart_e, rng)])
        pts = _upper(rng, len(self.free), [1j, 0.5j, 0j])
        out: list[float] = []
        for z in pts:
            if rng.random() < 0.5:
                z = z.conjugate()
            out += [z.real, z.imag]
        return np.array(out)

    def cell(self, side: int) -> OPlanar:
        """The chamber on the given side (+1 or -1) of the wall."""
        from .planar import reverse_at
        from .strata import contract_oplanar

        d = self.delta
        if self.kind == "real" and side < 0:
            d = reverse_at(d, self.v_E, self.gamma.n)
        res = contract_oplanar(self.gamma, self.iota, d, self.gamma.edges)
        if self.kind == "real":
            (_, _, o), = res
            return o
        for _, _, o in res:
            (_, datum), = o.vertex_data
            if (datum is EMPTY) == (side < 0):
                return o
        raise OracleError("missing chamber")

    def config(self, params: np.ndarray) -> dict[int, np.ndarray]:
        t = params[0]
        if t == 0:
            raise DegenerateT("t = 0 is the nodal curve")
        if self.kind == "real":
            setup = TwoVertexSetup(self.gamma, self.iota, self.delta, self.v_e, self.v_E, self.f_e, self.f_E,
                                   self.chart_e, self.chart_E)
            return deform_family(setup, params)
        k = self.sigma.k
        pos = {self.pin_a: 1j, self.pin_b: 0.5j}
        for i, f in enumerate(self.free):
            pos[f] = complex(params[1 + 2 * i], params[2 + 2 * i])
        # v_plus sits at unit scale, its conjugate bubble near 0; real structure Z -> t / conj(Z)
        cfg = {}
        for f, z in pos.items():
            cfg[f] = z
            cfg[self.sigma(f)] = t / np.conj(z)
        if t > 0:
            r = np.sqrt(t)
            m = np.array([[1j, 1j * r], [1, -r]], dtype=complex)
        else:
            m = np.array([[1, 0], [0, np.sqrt(-t)]], dtype=complex)
        return {f: m @ hom(z) for f, z in cfg.items()}


def wall_jacobian(fam: WallFamily, cell: OPlanar, t: float, w: np.ndarray, flip: bool = False) -> SignSample:
    sigma = fam.sigma

    def fun(p):
        cfg = fam.config(p)
        if flip:
            cfg = neg_identity(cfg)
        return cell_coords(cfg, cell, sigma)

    p = np.concatenate([[t], w])
    jac = jacobian(fun, p, step=min(STEP, abs(t) * 1e-3))
    sign, mag = _signed_det(jac)
    return SignSample(sign, mag, abs(np.linalg.det(jac)) if jac.size else 1.0)


def check_realizes(fam: WallFamily, side: int, seed: int = 0, t: float = 1e-3) -> bool:
    """The sampled configuration on a side realizes the chamber of that side."""
    rng = np.random.default_rng(seed)
    cfg = fam.config(np.concatenate([[side * t], fam.sample(rng)]))
    cell = fam.cell(side)
    (_, d), = cell.vertex_data
    if d is EMPTY:
        return True
    plus, order = realized_structure(cfg, fam.sigma, fam.gamma.n)
    return plus == d.plus and order == d.order


def numeric_aleph(fam: WallFamily, side: int = 1, t: float = 1e-3, seeds=range(10),
                  floor: float = DET_FLOOR) -> int:
    """Parity between the orientation induced from the chamber on ``side`` and the wall form.

    The chamber carries its reference form; the wall carries the product of
    vertex forms (far vertex first), or the complex orientation of the
    plus vertex for an isolated node.
    """
    cell = fam.cell(side)
    c = cell_case(cell, fam.sigma).sign
    out = set()
    for s in seeds:
        rng = np.random.default_rng(s)
        smp = wall_jacobian(fam, cell, side * t, fam.sample(rng))
        if smp.det < floor:
            raise IllConditioned(f"|det| = {smp.det:.3g} below {floor}")
        # -dt_in ^ omega = Theta * Omega_cell, with t_in = side * t
        out.add(-side * c * smp.sign)
    if len(out) != 1:
        raise OracleError("sign differs between samples")
    return 0 if out.pop() > 0 else 1


def numeric_sign_check(gamma: Tree, iota: TreeInvolution, delta: OPlanar, t: float = 1e-3,
                       seeds=range(10), floor: float = DET_FLOOR) -> int:
    """ℵ of the chamber obtained by contracting delta (the t > 0 side)."""
    return numeric_aleph(WallFamily(gamma, iota, delta), 1, t, seeds, floor)


def numeric_wall_consistent(fam: WallFamily, orient, t: float = 1e-3, seeds=range(5),
                            floor: float = DET_FLOOR) -> bool:
    """Do the chamber orientations on both sides extend across the wall?

    ``orient(cell)`` returns (representative, eps): the chamber is oriented
    by eps times the reference form of the representative, which is either
    the cell itself or its reversal (reached by z -> -z).
    """
    out = set()
    for s in seeds:
        rng = np.random.default_rng(s)
        w = fam.sample(rng)
        signs = []
        for side in (1, -1):
            cell = fam.cell(side)
            rep, eps = orient(cell)
            smp = wall_jacobian(fam, rep, side * t, w, flip=(rep != cell))
            if smp.det < floor:
                raise IllConditioned(f"|det| = {smp.det:.3g} below {floor}")
            signs.append(smp.sign * eps * cell_case(rep, fam.sigma).sign)
        out.add(signs[0] == signs[1])
    if len(out) != 1:
        raise OracleError("sign differs between samples")
    return out.pop()


def numeric_mu(gamma: Tree, iota: TreeInvolution, delta: OPlanar, v: int, seeds=range(5)) -> int:
    """m with Omega(reversed at v) = (-1)^m Omega(delta) on the chart of a real vertex v."""
    from .planar import reverse_at

    n = gamma.n
    f1 = WallFamily(gamma, iota, delta)
    f2 = WallFamily(gamma, iota, reverse_at(delta, v, n))
    ch1 = f1.chart_e if v == f1.v_e else f1.chart_E
    ch2 = f2.chart_e if v == f2.v_e else f2.chart_E
    if chart_dim(ch1) == 0:
        return 0
    out = set()
    for s in seeds:
        w = sample_chart(ch1, np.random.default_rng(s))

        def fun(x):
            return chart_read(ch2, neg_identity(chart_place(ch1, iota, x)))

        out.add(_signed_det(jacobian(fun, w))[0])
    if len(out) != 1:
        raise OracleError("sign differs between samples")
    return 0 if out.pop() > 0 else 1


# batch verification


@dataclass
class SignReport:
    sigma: LabelInvolution
    faces: int = 0  # o-planar two-vertex structures inspected
    walls: int = 0  # u-planar walls inspected
    aleph_mismatch: list = field(default_factory=list)
    pi_mismatch: list = field(default_factory=list)  # componentwise vs closed form
    numeric_pi_mismatch: list = field(default_factory=list)
    printed_pi_differs: list = field(default_factory=list)  # informational only

    @property
    def ok(self) -> bool:
        return not (self.aleph_mismatch or self.pi_mismatch or self.numeric_pi_mismatch)

    def to_json(self) -> dict:
        return {
            "sigma": self.sigma.to_json(),
            "faces": self.faces,
            "walls": self.walls,
            "aleph_mismatch": self.aleph_mismatch,
            "pi_mismatch": self.pi_mismatch,
            "numeric_pi_mismatch": self.numeric_pi_mismatch,
            "printed_pi_differs": self.printed_pi_differs,
            "ok": self.ok,
        }


def verify_signs(sigma: LabelInvolution, numeric: bool = False, t: float = 1e-3,
                 seeds=range(10), floor: float = DET_FLOOR) -> SignReport:
    """Check every wall of the base: pi against its closed form, and optionally against the oracle."""
    from .orientation import (
        aleph, aleph_l0, chamber_orientation, pi, pi_closed_form, pi_closed_form_as_printed,
        two_vertex_context, wall,
    )
    from .planar import enumerate_oplanar, enumerate_uplanar
    from .real_structure import enumerate_sigma_invariant_trees
    from .tree_core import describe

    rep = SignReport(sigma)
    for gamma, iota in enumerate_sigma_invariant_trees(sigma):
        if len(gamma.vertices) != 2:
            continue
        label = describe(gamma)
        if numeric:
            for o in enumerate_oplanar(gamma, iota):
                rep.faces += 1
                fam = WallFamily(gamma, iota, o)
                got = numeric_aleph(fam, 1, t, seeds, floor)
                if fam.kind == "real":
                    want = aleph(two_vertex_context(gamma, iota, o)) if sigma.l else aleph_l0(gamma, iota, o, True)
                else:
                    want = aleph_l0(gamma, iota, o, False)
                if got != want:
                    rep.aleph_mismatch.append([label, o.to_json(), got, want])
                if fam.kind == "node" and gamma.boundary(sigma.k) == gamma.boundary(o.plus_flag):
                    got = numeric_aleph(fam, -1, t, seeds, floor)
                    want = aleph_l0(gamma, iota, o, False, empty_side=True)
                    if got != want:
                        rep.aleph_mismatch.append([label, o.to_json(), got, want])
        for u in enumerate_uplanar(gamma, iota):
            rep.walls += 1
            w = wall(gamma, iota, u)
            p = pi(w)
            if sigma.l and w.v is not None:
                ctx = w.context(1)
                if p != pi_closed_form(ctx, w.v):
                    rep.pi_mismatch.append([label, u.to_json(), p])
                if p != pi_closed_form_as_printed(ctx, w.v):
                    rep.printed_pi_differs.append(label)
            if numeric:
                fam = WallFamily(gamma, iota, w.delta1)
                ext = numeric_wall_consistent(fam, lambda c: chamber_orientation(c, sigma), t,
                                              seeds, floor)
                if ext != (p == 1):
                    rep.numeric_pi_mismatch.append([label, u.to_json(), p])
    return rep


def verify_gluing(cover, t: float = 1e-3, seeds=range(5), floor: float = DET_FLOOR) -> list:
    """Glued faces whose sheet orientations fail to extend across the wall (should be empty)."""
    from .double_cover import sheet_orientation
    from .planar import reverse_all
    from .strata import contract_oplanar
    from .tree_core import describe

    sigma = cover.sigma
    bad = []
    for i, j, tag in cover.face_pairs:
        code, d1 = cover.nodes[i]
        _, d2 = cover.nodes[j]
        gamma, iota = cover.trees[code]
        fam = WallFamily(gamma, iota, d1)
        (_, _, c1), = contract_oplanar(gamma, iota, d1, gamma.edges)
        (_, _, c2), = contract_oplanar(gamma, iota, d2, gamma.edges)
        a, b = fam.cell(1), fam.cell(-1)
        if a != c1 or b not in (c2, reverse_all(c2, sigma.n)):
            raise OracleError("glued faces do not border the expected chambers")
        sheets = {a: sheet_orientation(c1, sigma), b: sheet_orientation(c2, sigma)}
        if not numeric_wall_consistent(fam, sheets.__getitem__, t, seeds, floor):
            bad.append((describe(gamma), tag))
    return bad
