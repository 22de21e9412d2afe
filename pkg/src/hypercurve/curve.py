"""The cubic curve  h^3 - 3 (P2/Pi4) h + 2 (P1/Pi4) = 0  and its branches.

``build_config`` fixes the four branch points, ``build_curve`` adds the pair
(c, d), forms the reduced discriminant  Dt = P2^3 - Pi4 P1^2  and classifies
the genus from its root structure.  Branch values are obtained from the
cleared cubic  Pi4 h^3 - 3 P2 h + 2 P1  and labelled by continuation from an
anchor far out on the positive real axis.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations

import numpy as np

from .errors import (DegenerateInputError,
                     DegreeViolationError, NearSingularError)
from .poly import CPoly, RootSet, peval, roots

DEGREE_TOL = 1e-10
TRIPLE_TOL = 1e-6  # relative |P2| at a zero of Dt where three sheets meet
RESOLUTION = 1e-7  # relative separation below which cubic roots are not told apart
_PERMS = tuple(permutations(range(3)))


@dataclass(frozen=True)
class BranchConfig:
    a1: complex
    b1: complex
    a2: complex
    b2: complex
    pi4: CPoly
    s1: complex
    s2: complex
    s3: complex
    s4: complex

    @property
    def points(self) -> np.ndarray:
        return np.array([self.a1, self.b1, self.a2, self.b2], dtype=complex)

    @property
    def scale(self) -> float:
        p = self.points
        return float(np.max(np.abs(p[:, None] - p[None, :])))

    @property
    def centroid(self) -> complex:
        return complex(np.mean(self.points))


@dataclass(frozen=True)
class CurveParams:
    c: complex
    d: complex


def build_config(a1, b1, a2, b2, allow_coincident: bool = False) -> BranchConfig:
    """Branch points, Pi4 and its signed elementary symmetric values.

    ``allow_coincident`` admits repeated points (Pi4 then has a multiple
    root); everything downstream that divides by Pi4 must avoid them.
    """
    pts = np.array([a1, b1, a2, b2], dtype=complex)
    if not np.all(np.isfinite(pts)):
        raise DegenerateInputError("branch points must be finite")
    dist = np.abs(pts[:, None] - pts[None, :])
    scale = dist.max()
    if scale == 0 or (not allow_coincident
                      and np.min(dist[np.triu_indices(4, 1)]) <= 1e-12 * scale):
        raise DegenerateInputError(f"branch points are not pairwise distinct: {pts}")
    pi4 = CPoly.from_roots(pts)
    c = pi4.coeffs
    # Pi4 = x^4 - s1 x^3 + s2 x^2 - s3 x + s4
    return BranchConfig(*(complex(p) for p in pts), pi4=pi4,
                        s1=complex(-c[3]), s2=complex(c[2]),
                        s3=complex(-c[1]), s4=complex(c[0]))


def curve_polys(config: BranchConfig, params: CurveParams) -> tuple[CPoly, CPoly]:
    """P1 = z - c and P2 = z^2 - (s1 + 2c)/3 z + d."""
    c, d = complex(params.c), complex(params.d)
    p1 = CPoly([-c, 1.0])
    p2 = CPoly([d, -(config.s1 + 2 * c) / 3, 1.0])
    return p1, p2


def classify_genus(dtilde: CPoly, cluster_tol: float = 1e-7, p2: CPoly | None = None):
    """Genus from the root structure of the reduced discriminant.

    Odd-multiplicity zeros (the point at infinity counts with order
    4 - deg) are simple branch points of the three-sheeted surface; by
    Riemann-Hurwitz the genus is half the total ramification.  A zero where
    P2 vanishes as well is a point where all three sheets meet (h^3 ~ z - z*)
    and contributes ramification 2 whatever its multiplicity; ``p2`` enables
    that test.

    Returns (genus, RootSet of finite zeros).
    """
    deg = dtilde.degree
    if deg < 0:
        raise DegenerateInputError("reduced discriminant vanishes identically")
    rs = roots(dtilde, cluster_tol=cluster_tol) if deg >= 1 else RootSet((), 0.0)
    ram = (4 - deg) % 2
    for r, m in rs.roots:
        ram += 2 if p2 is not None and is_triple_point(p2, r) else m % 2
    return ram // 2, rs


def is_triple_point(p2: CPoly, z: complex) -> bool:
    return abs(peval(p2, z)) <= TRIPLE_TOL * p2.scale() * (1 + abs(z)) ** 2


@dataclass(frozen=True)
class CubicCurve:
    config: BranchConfig
    params: CurveParams
    p1: CPoly
    p2: CPoly
    dtilde: CPoly
    genus: int
    dtilde_roots: RootSet
    soft_points: RootSet = field(repr=False)

    @property
    def nodes(self) -> np.ndarray:
        """Finite zeros of Dt of even multiplicity (double points, z0)."""
        return np.array([r for r, m in self.dtilde_roots.roots
                         if m % 2 == 0 and not is_triple_point(self.p2, r)], dtype=complex)

    @property
    def hard_edges(self) -> np.ndarray:
        return self.config.points

    @property
    def soft_edges(self) -> np.ndarray:
        return self.soft_points.values

    @cached_property
    def critical_points(self) -> np.ndarray:
        return np.concatenate([self.hard_edges, self.dtilde_roots.values])

    @property
    def r_sort(self) -> float:
        return 10.0 * (1.0 + float(np.max(np.abs(self.config.points))))

    @cached_property
    def _horner(self):
        pi4 = self.config.pi4
        polys = (pi4, pi4.deriv(), self.p2, self.p2.deriv(), self.p1, self.p1.deriv())
        return tuple([complex(a) for a in p.coeffs[::-1]] for p in polys)

    def _values(self, z: complex):
        out = []
        for c in self._horner:
            acc = 0j
            for a in c:
                acc = acc * z + a
            out.append(acc)
        return out

    def cubic_coeffs(self, z: complex) -> np.ndarray:
        """Ascending coefficients in h of Pi4(z) h^3 - 3 P2(z) h + 2 P1(z)."""
        pi4, _, p2, _, p1, _ = self._values(complex(z))
        return np.array([2 * p1, -3 * p2, 0.0, pi4], dtype=complex)

    def residual(self, z: complex, h: complex) -> float:
        """Relative residual of the cleared cubic at (z, h)."""
        c = self.cubic_coeffs(z)
        val = c[3] * h ** 3 + c[1] * h + c[0]
        ref = abs(c[3]) * abs(h) ** 3 + abs(c[1]) * abs(h) + abs(c[0])
        return float(abs(val) / ref) if ref else float(abs(val))

    def dh_dz(self, z: complex, h):
        """Implicit derivative along a branch (h may be an array)."""
        pi4, dpi4, p2, dp2, _, dp1 = self._values(complex(z))
        return -(dpi4 * h ** 3 - 3 * dp2 * h + 2 * dp1) / (3 * pi4 * h ** 2 - 3 * p2)

    def critical_distance(self, z: complex) -> float:
        return float(np.min(np.abs(self.critical_points - z)))


def build_curve(config: BranchConfig, params: CurveParams,
                cluster_tol: float = 1e-7) -> CubicCurve:
    p1, p2 = curve_polys(config, params)
    full = p2 ** 3 - config.pi4 * p1 ** 2
    ref = max(full.scale(), 1e-300)
    for k in (5, 6):
        if abs(full.coeff(k)) > DEGREE_TOL * ref:
            raise DegreeViolationError(
                f"coefficient of z^{k} in the reduced discriminant is {full.coeff(k):.3g}")
    dtilde = CPoly(full.coeffs[:5]).trim()
    genus, rs = classify_genus(dtilde, cluster_tol, p2)
    soft = RootSet(tuple((r, m) for r, m in rs.roots if m % 2 == 1), rs.residual_bound)
    return CubicCurve(config, params, p1, p2, dtilde, genus, rs, soft)


def cubic_roots(curve: CubicCurve, z: complex) -> np.ndarray:
    """The three branch values at z, unordered (companion eigenvalues)."""
    c = curve.cubic_coeffs(z)
    if c[3] == 0:
        raise NearSingularError(f"z={z} is a zero of Pi4")
    return np.roots(c[::-1])


def match(prev: np.ndarray, new: np.ndarray) -> tuple[np.ndarray, float]:
    """Permutation of ``new`` closest to ``prev``; returns (ordered, cost)."""
    best, cost = None, np.inf
    for p in _PERMS:
        e = max(abs(new[p[0]] - prev[0]), abs(new[p[1]] - prev[1]), abs(new[p[2]] - prev[2]))
        if e < cost:
            best, cost = p, e
    return new[list(best)], cost


def _min_gap(v: np.ndarray) -> float:
    return min(abs(v[0] - v[1]), abs(v[0] - v[2]), abs(v[1] - v[2]))


class BranchTracker:
    """Analytic continuation of the three (ordered) branch values.

    Moves are split into steps no longer than ``reach`` times the distance
    to the nearest critical point.  Each step is predicted with the implicit
    derivative and accepted when the new roots match the prediction well
    inside the local branch separation; otherwise it is bisected.
    """

    def __init__(self, curve: CubicCurve, z: complex, values, reach: float = 0.25,
                 min_step: float | None = None):
        self.curve = curve
        self.z = complex(z)
        self.values = np.asarray(values, dtype=complex).copy()
        self.reach = reach
        self.min_step = min_step if min_step is not None else 1e-10 * curve.config.scale

    def _try(self, z_new: complex):
        pred = self.values + self.curve.dh_dz(self.z, self.values) * (z_new - self.z)
        new = cubic_roots(self.curve, z_new)
        ordered, cost = match(pred, new)
        gaps = sorted([abs(new[0] - new[1]), abs(new[0] - new[2]), abs(new[1] - new[2])])
        if gaps[0] <= RESOLUTION * np.max(np.abs(new)):
            # two branches agree to working precision: only the third is checked
            return ordered, cost <= 0.25 * gaps[1]
        return ordered, cost <= 0.25 * gaps[0]

    def _step(self, target: complex):
        stack = [target]
        while stack:
            t = stack[-1]
            vals, ok = self._try(t)
            if ok or abs(t - self.z) <= self.min_step:
                self.z, self.values = t, vals
                stack.pop()
            else:
                stack.append(0.5 * (self.z + t))

    def move_to(self, z_new: complex) -> np.ndarray:
        z_new = complex(z_new)
        while self.z != z_new:
            room = self.reach * max(self.curve.critical_distance(self.z), self.min_step)
            d = z_new - self.z
            self._step(z_new if abs(d) <= room else self.z + d * (room / abs(d)))
        return self.values

    def follow(self, path) -> np.ndarray:
        for z in path:
            self.move_to(z)
        return self.values


def _detour(a: complex, b: complex, obstacles, radius: float) -> list[complex]:
    """Polyline from a to b, stepping around obstacles on the left-hand side."""
    d = b - a
    L = abs(d)
    if L == 0:
        return [b]
    u = d / L
    hits = []
    for o in obstacles:
        t = ((o - a) * np.conj(u)).real
        if 0 < t < L and abs(((o - a) * np.conj(u)).imag) < radius:
            hits.append((t, o))
    pts: list[complex] = []
    for t, o in sorted(hits):
        centre = a + t * u
        for k in range(9):
            ang = np.pi * k / 8
            pts.append(centre - radius * u * np.exp(-1j * ang))
    pts.append(b)
    return pts


def sorted_at_infinity(curve: CubicCurve, z: complex) -> np.ndarray:
    """Roots at a far point, h0 (z h0 -> -2) first, then h1, h2 by z^2 h - z."""
    v = cubic_roots(curve, z)
    i0 = int(np.argmin(np.abs(z * v + 2)))
    rest = [v[i] for i in range(3) if i != i0]
    rest.sort(key=lambda h: (round((z * z * h - z).real, 9), (z * z * h - z).imag))
    return np.array([v[i0], *rest])


def branches_at(curve: CubicCurve, z: complex) -> np.ndarray:
    """(h0, h1, h2) at z.

    For |z| >= r_sort the values are sorted: h0 is the root with z h0
    closest to -2 and h1, h2 are ordered by the real part (then imaginary
    part) of z^2 h - z.  Closer in, the labels of the anchor z = r_sort are
    carried along the straight segment to z by continuation, stepping
    around critical points within 1e-3 * scale of the segment on the left.
    """
    z = complex(z)
    scale = curve.config.scale
    crit = curve.critical_points
    if np.min(np.abs(crit - z)) <= 1e-10 * scale:
        raise NearSingularError(f"z={z} is within 1e-10*scale of a branch point")
    anchor = curve.r_sort
    if abs(z) >= anchor:
        return sorted_at_infinity(curve, z)
    tracker = BranchTracker(curve, anchor, sorted_at_infinity(curve, anchor))
    tracker.follow(_detour(anchor, z, crit, 1e-3 * scale))
    return tracker.values.copy()
