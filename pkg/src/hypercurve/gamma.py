"""The set Gamma where two branches of g = Re G coincide.

Along Gamma the difference of two branches of the Abelian integral has
constant real part, so Gamma is made of trajectories of the quadratic
differential  -(h_l - h_k)^2 dz^2 > 0  issuing from the points where h_l and
h_k are glued together: the hard edges a_j, b_j and the soft edges (simple
zeros of the reduced discriminant).

``trace_gamma`` launches one trajectory per departure direction found on a
small circle around every edge and marches with a midpoint predictor, a
Simpson estimate of the accumulated  Re int (h_l - h_k) dz  and a Newton
projection that pulls the accumulated value back to zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .curve import BranchTracker, CubicCurve, branches_at, cubic_roots, _detour
from .errors import (BranchCollisionError, InputError, NonConvergenceError,
                     StepCollapseError)

_GL_X, _GL_W = np.polynomial.legendre.leggauss(8)
_PROBE_X, _PROBE_W = np.polynomial.legendre.leggauss(16)
RESIDUE_AT_INFINITY = (-2.0, 1.0, 1.0)  # z h_j -> these values as z -> infinity


@dataclass(frozen=True)
class GammaOptions:
    step: float | None = None          # default 1e-3 * scale
    box: float | None = None           # half-width around the centroid, default scale
    drift_tol: float = 1e-6            # per unit arclength
    end_radius: float = 5.0            # in steps
    probe_angles: int = 256
    max_steps: int = 40000

    def resolved(self, curve: CubicCurve) -> "GammaOptions":
        scale = curve.config.scale
        return GammaOptions(self.step or 1e-3 * scale, self.box or scale, self.drift_tol,
                            self.end_radius, self.probe_angles, self.max_steps)


@dataclass(frozen=True)
class GammaArc:
    points: np.ndarray
    pair: tuple[int, int]
    seed: complex
    seed_kind: str
    direction: int
    end_reason: str
    max_drift: float
    end_values: np.ndarray = field(repr=False, compare=False)

    @property
    def arclength(self) -> float:
        return float(np.sum(np.abs(np.diff(self.points))))


@dataclass(frozen=True)
class GammaSet:
    arcs: tuple[GammaArc, ...]
    hard_edges: np.ndarray
    soft_edges: np.ndarray
    step: float

    def point_cloud(self) -> np.ndarray:
        if not self.arcs:
            return np.zeros(0, complex)
        return np.concatenate([a.points for a in self.arcs])


# -- integration of h_l - h_k along paths ----------------------------------

def _pair_index(values, pair_values) -> tuple[int, int]:
    i = int(np.argmin(np.abs(values - pair_values[0])))
    j = int(np.argmin(np.abs(values - pair_values[1])))
    return i, j


def _segment_integral(curve: CubicCurve, z0: complex, vals: np.ndarray, z1: complex,
                      l: int, k: int):
    """Gauss-Legendre integral of h_l - h_k over [z0, z1] with tracked values.

    Returns (integral, values at z1); the segment is split until every node
    is matched safely to the Taylor prediction from the previous node.
    """
    mid, half = 0.5 * (z0 + z1), 0.5 * (z1 - z0)
    tracker = BranchTracker(curve, z0, vals)
    acc = 0j
    for x, wgt in zip(_GL_X, _GL_W):
        v = tracker.move_to(mid + half * x)
        acc += wgt * (v[l] - v[k])
    end = tracker.move_to(z1)
    return acc * half, end.copy()


def integrate_pair(curve: CubicCurve, path, values, l: int, k: int,
                   reach: float = 0.25, collision_tol: float = 1e-9):
    """Complex integral of h_l - h_k along a polyline, by continuation.

    ``values`` are the three branch values at path[0] in the caller's
    labelling.  Returns (integral, values at the end of the path).
    """
    path = [complex(p) for p in path]
    vals = np.asarray(values, dtype=complex).copy()
    total = 0j
    z = path[0]
    for target in path[1:]:
        while z != target:
            room = reach * max(curve.critical_distance(z), 1e-12 * curve.config.scale)
            d = target - z
            z_next = target if abs(d) <= room else z + d * (room / abs(d))
            seg, vals = _segment_integral(curve, z, vals, z_next, l, k)
            gap = abs(vals[l] - vals[k])
            if gap <= collision_tol * max(abs(vals[l]), abs(vals[k]), 1e-300):
                raise BranchCollisionError(f"branches {l} and {k} meet at z={z_next}")
            total += seg
            z = z_next
    return total, vals


def pair_potential(curve: CubicCurve, l: int, k: int, path, counterterm: bool = True,
                   values=None) -> float:
    """Re of the integral of h_l - h_k along ``path``.

    Labels are those of ``branches_at`` at path[0] unless ``values`` gives the
    starting values explicitly.  With ``counterterm`` the logarithmic growth
    (r_l - r_k) ln|t| coming from the behaviour h_j ~ r_j / t at infinity is
    removed, anchored at the start of the path.
    """
    path = [complex(p) for p in path]
    if len(path) < 2:
        raise InputError("a path needs at least two points")
    scale = curve.config.scale
    if min(curve.critical_distance(p) for p in path) < 1e-6 * scale:
        raise InputError("the path passes within 1e-6*scale of a branch point")
    start = branches_at(curve, path[0]) if values is None else np.asarray(values, complex)
    val, _ = integrate_pair(curve, path, start, l, k)
    out = val.real
    if counterterm:
        out -= (RESIDUE_AT_INFINITY[l] - RESIDUE_AT_INFINITY[k]) * np.log(abs(path[-1]) / abs(path[0]))
    return float(out)


def _large_pair(values) -> tuple[int, int]:
    order = np.argsort(-np.abs(values))
    return int(order[0]), int(order[1])


def _close_pair(values) -> tuple[int, int]:
    best = min(((abs(values[i] - values[j]), i, j) for i, j in ((0, 1), (0, 2), (1, 2))))
    return best[1], best[2]


def validating_cycle(curve: CubicCurve, L: float | None = None, eps: float | None = None,
                     arc_points: int = 64) -> float:
    """Re of the period of h dz over the cycle through a1 and b1.

    The cycle leaves b1 along the sheets glued there, runs out along the
    real axis to +L, round the upper half circle |z| = L to -L and back in
    to a1; this is the z-plane image of the contour that starts at the
    infinity of sheet 0, lifts at a1 and returns at b1.  Critical points on
    the real axis are bypassed by small semicircles (they are not branch
    points of the pair, or the route would not be a cycle).  The singular
    ends are integrated exactly to leading order, the arc contributes
    -3 pi i + O(1/L), and the result is extrapolated from L and 2L.
    """
    cfg = curve.config
    scale = cfg.scale
    if abs(cfg.a1.imag) > 1e-12 * scale or abs(cfg.b1.imag) > 1e-12 * scale:
        raise InputError("the validating cycle needs a1 and b1 on the real axis")
    L = L or 1e3 * (1 + float(np.max(np.abs(cfg.points))))
    eps = eps or 1e-7 * scale
    lo, hi = sorted((cfg.a1.real, cfg.b1.real))

    def one(Lc: float) -> float:
        crit = curve.critical_points
        p_out = _detour(hi + eps, Lc, [c for c in crit if abs(c - hi) > 2 * eps], 1e-3 * scale)
        ang = np.linspace(0, np.pi, arc_points + 1)[1:]
        p_arc = list(Lc * np.exp(1j * ang))
        p_in = _detour(-Lc, lo - eps, [c for c in crit if abs(c - lo) > 2 * eps], 1e-3 * scale)
        path = [hi + eps] + p_out + p_arc + p_in
        start = cubic_roots(curve, hi + eps)
        l, k = _large_pair(start)
        val, end = integrate_pair(curve, path, start, l, k)
        if set(_large_pair(end)) != {l, k}:
            raise NonConvergenceError("the tracked pair is not glued at the far end of the cycle")
        # at both ends h_l - h_k ~ C t^(-1/2) in the distance t to the edge,
        # so the missing piece of length eps is 2 eps (h_l - h_k)(eps)
        val += 2 * eps * (start[l] - start[k]) + 2 * eps * (end[l] - end[k])
        return val.real

    v1, v2 = one(L), one(2 * L)
    return float(2 * v2 - v1)


# -- departure directions ---------------------------------------------------

def _ray_potential(curve: CubicCurve, e: complex, u: complex, rho: float, chooser, ref=None):
    """Re int_e^{e + rho u} (h_l - h_k) dz along the ray, with z = e + s^2 u.

    Returns (value, values at the outer point with the pair first, outer w).
    The sign of w at the outer point follows ``ref`` when given.
    """
    outer = cubic_roots(curve, e + rho * u)
    i, j = chooser(outer)
    w_out = outer[i] - outer[j]
    if ref is not None and (w_out * np.conj(ref)).real < 0:
        i, j = j, i
        w_out = -w_out
    m = 3 - i - j
    ordered = np.array([outer[i], outer[j], outer[m]])
    root = np.sqrt(rho)
    s_nodes = 0.5 * root * (_PROBE_X + 1)
    acc = 0j
    prev = w_out
    for s, wgt in sorted(zip(s_nodes, _PROBE_W), reverse=True):
        v = cubic_roots(curve, e + s * s * u)
        a, b = chooser(v)
        w = v[a] - v[b]
        if (w * np.conj(prev)).real < 0:
            w = -w
        prev = w
        acc += wgt * w * 2 * s * u
    return (acc * 0.5 * root).real, ordered, w_out


def departure_directions(curve: CubicCurve, e: complex, kind: str, rho: float,
                         n: int = 256):
    """Angles on the circle |z - e| = rho where Re int_e (h_l - h_k) dz vanishes.

    Returns a list of (angle, potential, ordered values at e + rho e^{i angle}).
    """
    chooser = _large_pair if kind == "hard" else _close_pair
    # half-spacing offset keeps the grid off the symmetry directions 0 and pi
    thetas = 2 * np.pi * (np.arange(n + 1) + 0.5) / n
    data = []
    ref = None
    for t in thetas:
        phi, vals, w = _ray_potential(curve, e, np.exp(1j * t), rho, chooser, ref)
        ref = w
        data.append((phi, vals, w))
    out = []
    for i in range(1, n + 1):
        (t0, (f0, _, ref)), (t1, (f1, _, _)) = (thetas[i - 1], data[i - 1]), (thetas[i], data[i])
        if f0 * f1 > 0:
            continue
        for _ in range(4):  # secant refinement of the crossing
            t = t1 if f1 == f0 else t1 - f1 * (t1 - t0) / (f1 - f0)
            phi, vals, _ = _ray_potential(curve, e, np.exp(1j * t), rho, chooser, ref)
            t0, f0, t1, f1 = t1, f1, t, phi
        out.append((float(t % (2 * np.pi)), phi, vals))
    out.sort(key=lambda c: c[0])
    return out


# -- marching ---------------------------------------------------------------

def end_radii(curve: CubicCurve, opts: GammaOptions) -> np.ndarray:
    """Capture radius of each critical point: end_radius steps, shrunk to a
    third of the distance to the nearest other critical point."""
    crit = curve.critical_points
    d = np.abs(crit[:, None] - crit[None, :])
    np.fill_diagonal(d, np.inf)
    return np.minimum(opts.end_radius * opts.step, d.min(axis=1) / 3)


def _radius_at(curve: CubicCurve, opts: GammaOptions, e: complex) -> float:
    crit = curve.critical_points
    return float(end_radii(curve, opts)[int(np.argmin(np.abs(crit - e)))])


def _advance(curve, z, vals, z_new):
    return BranchTracker(curve, z, vals).move_to(z_new).copy()


def _tangent(w: complex, hint: complex) -> complex:
    t = 1j * np.conj(w) / abs(w)
    return t if (t * np.conj(hint)).real >= 0 else -t


def _march(curve: CubicCurve, z: complex, vals: np.ndarray, hint: complex, phi: float,
           opts: GammaOptions, origin: complex | None):
    """Follow Re int (h_0 - h_1) dz = const from z; vals has the pair first."""
    step0 = opts.step
    radii = end_radii(curve, opts)
    crit = curve.critical_points
    centre = curve.config.centroid
    pts = [z]
    ds = step0
    travelled = 0.0
    drift = abs(phi)
    reason = "max_steps"
    for _ in range(opts.max_steps):
        w = vals[0] - vals[1]
        if abs(w) <= 1e-12 * max(abs(vals[0]), 1e-300):
            raise BranchCollisionError(f"the traced pair collides at z={z}")
        T = _tangent(w, hint)
        ds = min(ds, 0.25 * curve.critical_distance(z))
        while True:
            zm = z + 0.5 * ds * T
            vm = _advance(curve, z, vals, zm)
            Tm = _tangent(vm[0] - vm[1], T)
            z_new = z + ds * Tm
            corr = 0.0
            ok = False
            for _ in range(6):
                zh = 0.5 * (z + z_new)
                vh = _advance(curve, z, vals, zh)
                vn = _advance(curve, zh, vh, z_new)
                wn = vn[0] - vn[1]
                F = phi + ((z_new - z) / 6 * (w + 4 * (vh[0] - vh[1]) + wn)).real
                if abs(F) <= 1e-3 * opts.drift_tol * step0:
                    ok = True
                    break
                delta = -F * np.conj(wn) / abs(wn) ** 2
                corr += abs(delta)
                z_new += delta
            if ok and corr <= 0.1 * ds:
                break
            ds *= 0.5
            if ds < 1e-6 * step0:
                raise StepCollapseError(f"projection failed near z={z}", location=complex(z))
        travelled += abs(z_new - z)
        hint = z_new - z
        z, vals, phi = z_new, vn, F
        drift = max(drift, abs(phi))
        pts.append(z)
        ds = min(step0, 1.5 * ds)
        d = np.abs(crit - z)
        near = [c for c, dc, rc in zip(crit, d, radii) if dc < rc
                and (origin is None or abs(c - origin) > 1e-12 or travelled > 4 * rc)]
        if near:
            pts.append(complex(near[0]))
            reason = "edge"
            break
        off = z - centre
        if abs(off.real) > opts.box or abs(off.imag) > opts.box:
            reason = "box"
            break
        if len(pts) > 60 and len(pts) % 10 == 0:
            old = np.asarray(pts[:-50])
            if np.min(np.abs(old - z)) < 2 * step0:
                reason = "loop"
                break
    return np.asarray(pts), vals, reason, drift


def _labels(curve: CubicCurve, z: complex, pair_vals) -> tuple[int, int]:
    ref = branches_at(curve, z)
    i, j = _pair_index(ref, pair_vals)
    return (i, j) if i < j else (j, i)


def trace_from_edge(curve: CubicCurve, e: complex, kind: str, opts: GammaOptions,
                    seed_label: complex | None = None) -> list[GammaArc]:
    rho = _radius_at(curve, opts, e)
    arcs = []
    for idx, (theta, phi, vals) in enumerate(
            departure_directions(curve, e, kind, rho, opts.probe_angles)):
        z1 = e + rho * np.exp(1j * theta)
        pts, end_vals, reason, drift = _march(curve, z1, vals, np.exp(1j * theta), phi, opts, e)
        arcs.append(GammaArc(np.concatenate([[e], pts]), _labels(curve, z1, vals[:2]),
                             complex(e), kind, idx, reason, drift, end_vals))
    return arcs


def trace_gamma(curve: CubicCurve, options: GammaOptions | None = None) -> GammaSet:
    """Trajectories from every hard and soft edge, sorted by seed then direction."""
    opts = (options or GammaOptions()).resolved(curve)
    seeds = [(complex(e), "hard") for e in curve.hard_edges]
    seeds += [(complex(e), "soft") for e in curve.soft_edges]
    seeds.sort(key=lambda s: (round(s[0].real, 12), round(s[0].imag, 12)))
    arcs = []
    for e, kind in seeds:
        arcs.extend(trace_from_edge(curve, e, kind, opts))
    return GammaSet(tuple(arcs), curve.hard_edges, curve.soft_edges, opts.step)


def retrace(curve: CubicCurve, arc: GammaArc, options: GammaOptions | None = None) -> np.ndarray:
    """Trace ``arc`` again from its far end; returns the new polyline."""
    opts = (options or GammaOptions()).resolved(curve)
    pts = arc.points
    if arc.end_reason == "edge":
        e = complex(pts[-1])
        kind = "hard" if np.min(np.abs(curve.hard_edges - e)) < 1e-12 else "soft"
        rho = _radius_at(curve, opts, e)
        approach = pts[-2] - e
        cands = departure_directions(curve, e, kind, rho, opts.probe_angles)
        if not cands:
            raise NonConvergenceError(f"no departure direction at {e}")
        theta, phi, vals = min(cands, key=lambda c: abs(np.angle(np.exp(1j * c[0]) / approach)))
        z1 = e + rho * np.exp(1j * theta)
        new, *_ = _march(curve, z1, vals, np.exp(1j * theta), phi, opts, e)
        return np.concatenate([[e], new])
    z = complex(pts[-1])
    new, *_ = _march(curve, z, arc.end_values, pts[-2] - pts[-1], 0.0, opts, None)
    return new


def hausdorff(p: np.ndarray, q: np.ndarray) -> float:
    """Hausdorff distance between two finite point sets in the plane."""
    p = np.asarray(p, complex)
    q = np.asarray(q, complex)
    d = np.abs(p[:, None] - q[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))
