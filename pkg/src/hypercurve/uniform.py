"""Hyperelliptic uniformization of the cubic curve.

The substitution  R = z - 1/h,  Delta = 2 K2(R)/h + Pi4'(R)  with
K2(R) = 3R^2 + 2(c - s1)R - 3d + s2  maps the three-sheeted surface of h
conformally onto the two-sheeted surface  Delta^2 = Pi4'(R)^2 - 4 Pi4(R) K2(R).
The inverse is  z = R + (Delta - Pi4')/(2 K2),  h = -(Pi4' + Delta)/(2 Pi4).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .curve import CubicCurve
from .errors import OffCurveError, SingularDenominatorError, ZeroBranchError
from .poly import CPoly, RootSet, eval_bound, peval, roots

CURVE_TOL = 1e-9
SINGULAR_RADIUS = 1e-8  # times scale, around zeros of K2 and Pi4


def _sqrt_factor(w, r: complex):
    # (R - r)^(1/2) with the cut running vertically away from the real axis:
    # continuous along the real line and equal to +sqrt(R - r) for large R.
    if r.imag > 0:
        return np.sqrt(-1j * w) * np.exp(1j * np.pi / 4)
    return np.sqrt(1j * w) * np.exp(-1j * np.pi / 4)


class SqrtDelta:
    """Continuous square root of Delta~^2 along the real axis.

    Built as  sqrt(lc) * prod (R - r)^(m//2) * prod_{m odd} (R - r)^(1/2)
    over the clustered roots r of Delta~^2, each half-power with its cut
    pointing vertically away from the real axis.  On the real line this is
    the branch that is positive as R -> +infinity and continuous elsewhere;
    off the axis it is continuous in each half-plane away from the cuts.
    """

    def __init__(self, delta2: CPoly, root_set: RootSet):
        self.lc = complex(delta2.leading)
        self.whole = tuple(r for r, m in root_set.roots for _ in range(m // 2))
        self.half = tuple(r for r, m in root_set.roots if m % 2)

    def __call__(self, R):
        R = np.asarray(R, dtype=complex)
        out = np.sqrt(self.lc) * np.ones_like(R)
        for r in self.whole:
            out = out * (R - r)
        for r in self.half:
            out = out * _sqrt_factor(R - r, r)
        return out if out.ndim else complex(out)


@dataclass(frozen=True)
class HyperCurve:
    curve: CubicCurve
    k2: CPoly
    delta2: CPoly
    eps: RootSet
    genus: int

    @cached_property
    def k2_zeros(self) -> np.ndarray:
        return roots(self.k2).values

    @property
    def sqrt_delta(self) -> SqrtDelta:
        return SqrtDelta(self.delta2, self.eps)

    def ultra_residual(self, R: complex, Delta: complex) -> float:
        """|Delta^2 - Delta~^2(R)|."""
        return float(abs(Delta * Delta - peval(self.delta2, R)))


@dataclass(frozen=True)
class SurfacePoint:
    z: complex
    h: complex
    R: complex
    Delta: complex


def k2_poly(curve: CubicCurve) -> CPoly:
    cfg, prm = curve.config, curve.params
    return CPoly([-3 * complex(prm.d) + cfg.s2, 2 * (complex(prm.c) - cfg.s1), 3.0])


def hyper_genus(eps: RootSet) -> int:
    """Genus of Delta^2 = Delta~^2(R), deg Delta~^2 = 6: half the odd zeros, minus one."""
    n_odd = int(sum(m % 2 for _, m in eps.roots))
    return max(n_odd // 2 - 1, 0)


def build_hyper(curve: CubicCurve, cluster_tol: float = 1e-7) -> HyperCurve:
    pi4 = curve.config.pi4
    k2 = k2_poly(curve)
    dp = pi4.deriv()
    delta2 = (dp * dp - 4 * pi4 * k2).trim()
    eps = roots(delta2, cluster_tol=cluster_tol)
    return HyperCurve(curve, k2, delta2, eps, hyper_genus(eps))


def _guard(hyper: HyperCurve, R: complex) -> None:
    cfg = hyper.curve.config
    radius = SINGULAR_RADIUS * cfg.scale
    near = [r for r in (*cfg.points, *hyper.k2_zeros) if abs(R - r) <= radius]
    if near:
        raise SingularDenominatorError(f"R={R} lies within {radius:.2g} of a zero of K2 or Pi4")


def forward(hyper: HyperCurve, z: complex, h: complex) -> SurfacePoint:
    """(z, h) on the cubic curve  ->  (R, Delta) on the hyperelliptic one."""
    z, h = complex(z), complex(h)
    if abs(h) < 1e-14:
        raise ZeroBranchError(f"|h| = {abs(h):.3g} at z={z}")
    res = hyper.curve.residual(z, h)
    if res > CURVE_TOL:
        raise OffCurveError(f"(z, h) = ({z}, {h}) is off the curve (residual {res:.3g})")
    w = 1.0 / h
    R = z - w
    pi4 = hyper.curve.config.pi4
    dp = peval(pi4.deriv(), R)
    # two equivalent forms on the curve; take the one with less cancellation
    a, b = 2 * peval(hyper.k2, R) * w + dp, -2 * peval(pi4, R) * h - dp
    cond_a = max(abs(a - dp), abs(dp)) / max(abs(a), 1e-300)
    cond_b = max(abs(b + dp), abs(dp)) / max(abs(b), 1e-300)
    Delta = a if cond_a <= cond_b else b
    return SurfacePoint(z, h, R, complex(Delta))


def _inverse_w(hyper: HyperCurve, R: complex, Delta: complex) -> complex:
    """w = 1/h = z - R, using whichever of the two equivalent forms avoids cancellation."""
    pi4 = hyper.curve.config.pi4
    dp = peval(pi4.deriv(), R)
    minus, plus = Delta - dp, Delta + dp
    if abs(minus) >= abs(plus):
        return minus / (2 * peval(hyper.k2, R))
    return -2 * peval(pi4, R) / plus


def inverse(hyper: HyperCurve, R: complex, Delta: complex) -> SurfacePoint:
    """(R, Delta) on the hyperelliptic curve  ->  (z, h) on the cubic one."""
    R, Delta = complex(R), complex(Delta)
    _guard(hyper, R)
    ref = abs(Delta) ** 2 + eval_bound(hyper.delta2, R)
    if hyper.ultra_residual(R, Delta) > CURVE_TOL * ref:
        raise OffCurveError(f"(R, Delta) = ({R}, {Delta}) is off the hyperelliptic curve")
    w = _inverse_w(hyper, R, Delta)
    if w == 0:
        raise SingularDenominatorError(f"h is infinite at R={R}")
    return SurfacePoint(R + w, 1.0 / w, R, Delta)


def hdz_integrand(hyper: HyperCurve, R: complex, Delta: complex) -> complex:
    """Density of h dz in the variable R along the sheet selected by Delta.

    (Pi4' K2' + 4 K2^2 - 2 K2 Pi4'') / (2 K2 Delta) - K2' / (2 K2)
    """
    R, Delta = complex(R), complex(Delta)
    _guard(hyper, R)
    if Delta == 0:
        raise SingularDenominatorError(f"Delta vanishes at R={R}")
    pi4, k2 = hyper.curve.config.pi4, hyper.k2
    d1, d2 = peval(pi4.deriv(), R), peval(pi4.deriv(2), R)
    k, dk = peval(k2, R), peval(k2.deriv(), R)
    return (d1 * dk + 4 * k * k - 2 * k * d2) / (2 * k * Delta) - dk / (2 * k)


def surface_points(hyper: HyperCurve, z: complex, values) -> list[SurfacePoint]:
    """Forward images of the three sheets above z."""
    return [forward(hyper, z, h) for h in values]
