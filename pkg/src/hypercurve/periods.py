"""Real part of the period that fixes R0 for non-symmetric genus-1 data.

On the two-sheeted surface the period reduces to

    Re I = Re  integral over the real line of  (J(R) - Reg(R)) dR,
    J(R) = -Delta(R) / (2 Pi4(R)),   Delta(R) = (R - R0) sqrt(q(R)),

with q = Delta~^2 / (R - R0)^2 and the square root continuous along the
real axis and positive at +infinity.  J has simple poles of residue -1/2 at
the A1 edges and +1/2 at the A2 edges and decays like -1/R; the rational
regularizer Reg has the same poles and tail and integrates to zero, so the
difference is an ordinary integrable function.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .curve import BranchConfig, build_curve
from .errors import (NearPoleError, NoSignChangeError, NumericalError,
                     QuadratureFailureError)
from .genus1 import Genus1Params, params_from_r0
from .poly import CPoly, peval, roots
from .uniform import SqrtDelta, build_hyper

POLE_GUARD = 1e-9
MV_NODES = 16


@dataclass(frozen=True)
class PeriodResult:
    re_I: float
    quadrature_error: float
    evaluations: int


class JIntegrand:
    """J(R) for a fixed configuration and R0, vectorised over R."""

    def __init__(self, config: BranchConfig, gparams: Genus1Params):
        self.config = config
        self.R0 = complex(gparams.R0)
        hyper = build_hyper(build_curve(config, gparams.params))
        self.delta2 = hyper.delta2
        q, _ = hyper.delta2.divmod(CPoly([self.R0 * self.R0, -2 * self.R0, 1.0]))
        self.q = q
        self.q_roots = roots(q)
        self.sqrt_q = SqrtDelta(q, self.q_roots)

    @property
    def decays_both_ends(self) -> bool:
        """Whether J ~ -1/R at -infinity too, not only at +infinity.

        The continuous root is positive at +infinity by construction; it
        comes back negative at -infinity when q has real simple zeros, or
        unequal numbers of zeros above and below the axis.
        """
        X = 1e6 * (1 + float(np.max(np.abs(self.config.points))) + abs(self.R0))
        return abs(self.sqrt_q(-X) / (2 * X * X) - 1) < 1e-3

    def delta(self, R):
        return (np.asarray(R, dtype=complex) - self.R0) * self.sqrt_q(R)

    def __call__(self, R):
        return -self.delta(R) / (2 * peval(self.config.pi4, R))

    def residues(self) -> np.ndarray:
        """Residues of J at a1, b1, a2, b2."""
        pi4 = self.config.pi4
        pts = self.config.points
        return np.array([-self.delta(p) / (2 * peval(pi4.deriv(), p)) for p in pts])


def integrand_J(config: BranchConfig, gparams: Genus1Params, R: float) -> complex:
    R = float(R)
    near = [p for p in config.points if abs(p.imag) < POLE_GUARD and abs(R - p.real) < POLE_GUARD]
    if near:
        raise NearPoleError(f"R={R} is within {POLE_GUARD} of the branch point {near[0]}")
    return complex(JIntegrand(config, gparams)(R))


def _reg(config: BranchConfig, R, tail_coeff: float):
    R = np.asarray(R, dtype=complex)
    return (0.5 / (R - config.a2) + 0.5 / (R - config.b2)
            - 0.5 / (R - config.a1) - 0.5 / (R - config.b1)
            - tail_coeff * R / (R * R + 1))


def regularizer(config: BranchConfig, R: float, tail_coeff: float = 1.0) -> float:
    """Reg(R); ``tail_coeff`` multiplies the  -R/(R^2 + 1)  tail term.

    The default 1 makes Reg ~ -1/R, matching J, so that J - Reg = O(R^-2).
    With 1/2 the tail mismatch is -1/(2R), which is odd and integrates to
    zero over symmetric truncations: Re I is unchanged, only the pointwise
    decay is lost.
    """
    R = float(R)
    near = [p for p in config.points if abs(R - p) < POLE_GUARD]
    if near:
        raise NearPoleError(f"R={R} is within {POLE_GUARD} of the branch point {near[0]}")
    return float(complex(_reg(config, R, tail_coeff)).real)


class _Difference:
    """Re (J - Reg) with pole cancellation handled by the mean-value property.

    Within ``radius/2`` of a real hard edge x the difference is analytic but
    both terms blow up; there it is replaced by its average over a circle of
    radius ``radius`` centred at R, which equals the value exactly.
    """

    def __init__(self, J: JIntegrand, tail_coeff: float):
        self.J = J
        self.tail = tail_coeff
        cfg = J.config
        self.edges = [p.real for p in cfg.points if abs(p.imag) <= 1e-14 * cfg.scale]
        others = np.concatenate([cfg.points, J.q_roots.values, [1j, -1j]])
        self.radius = {}
        for x in self.edges:
            d = np.abs(others - x)
            d = d[d > 1e-14 * cfg.scale]
            self.radius[x] = min(2e-3 * cfg.scale, 0.25 * float(d.min()))
        self.theta = np.exp(2j * np.pi * (np.arange(MV_NODES) + 0.5) / MV_NODES)
        self.calls = 0

    def _f(self, R):
        return self.J(R) - _reg(self.J.config, R, self.tail)

    def __call__(self, R: float) -> float:
        self.calls += 1
        for x in self.edges:
            r = self.radius[x]
            if abs(R - x) < 0.5 * r:
                return float(np.mean(self._f(R + r * self.theta)).real)
        return float(complex(self._f(R)).real)


def _check_residues(J: JIntegrand) -> None:
    expected = np.array([-0.5, -0.5, 0.5, 0.5])
    got = J.residues()
    cfg = J.config
    for p, e, g in zip(cfg.points, expected, got):
        if abs(p.imag) <= 1e-14 * cfg.scale and abs(g - e) > 1e-6:
            raise QuadratureFailureError(
                f"residue of J at {p.real} is {g:.6g}, the contour needs {e}; "
                "the pairing of branch points does not match the regularizer")


def re_I(config: BranchConfig, gparams: Genus1Params, tol: float = 1e-6,
         tail_coeff: float = 1.0) -> PeriodResult:
    """Re of the integral of J - Reg over the real line.

    The integrand is folded, G(R) = F(R) + F(-R) on [0, inf), and integrated
    with QUADPACK on the pieces between |real singular points|; the last
    piece is infinite and handled by QUADPACK's compactifying map.
    """
    J = JIntegrand(config, gparams)
    if not J.decays_both_ends:
        raise QuadratureFailureError(
            f"at R0={J.R0} the continuous root of q changes sign between +infinity and "
            "-infinity, so J - Reg is not integrable on the real line")
    _check_residues(J)
    F = _Difference(J, tail_coeff)
    breaks = {0.0, abs(J.R0.real)}
    breaks.update(abs(p.real) for p in config.points if abs(p.imag) <= 1e-14 * config.scale)
    breaks.update(abs(r.real) for r in J.q_roots.values if abs(r.imag) <= 1e-12 * config.scale)
    edges = sorted(breaks) + [np.inf]

    def G(R):
        return F(R) + F(-R)

    total, err = 0.0, 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi - lo <= 0:
            continue
        val, e, *rest = quad(G, lo, hi, limit=400, epsabs=0.01 * tol, epsrel=1e-10,
                             full_output=1)
        total += val
        err += e
    if err > tol:
        raise QuadratureFailureError(f"quadrature error {err:.3g} exceeds target {tol:.3g}")
    return PeriodResult(total, err, F.calls)


def re_I_at(config: BranchConfig, R0: float, tol: float = 1e-6,
            tail_coeff: float = 1.0) -> PeriodResult:
    return re_I(config, params_from_r0(config, R0), tol, tail_coeff)


def sweep_sign_changes(config: BranchConfig, lo: float, hi: float, n: int = 20,
                       tol: float = 1e-6) -> list[tuple[float, float]]:
    """Sub-brackets of [lo, hi] on an n-interval grid where Re I changes sign.

    Grid points where Re I cannot be evaluated (R0 on a branch point, or a
    residue pattern that does not fit the regularizer) are skipped together
    with their two intervals.
    """
    grid = np.linspace(lo, hi, n + 1)
    vals = []
    for r in grid:
        try:
            vals.append(re_I_at(config, float(r), tol).re_I)
        except NumericalError:
            vals.append(np.nan)
    return [(float(grid[i]), float(grid[i + 1])) for i in range(n)
            if vals[i] * vals[i + 1] <= 0]


def solve_r0(config: BranchConfig, bracket=(0.05, 0.10), tol: float = 1e-6,
             xtol: float = 1e-12) -> Genus1Params:
    """Real R0 in ``bracket`` with Re I(R0) = 0 (Brent's method)."""
    lo, hi = float(bracket[0]), float(bracket[1])
    f_lo = re_I_at(config, lo, tol).re_I
    f_hi = re_I_at(config, hi, tol).re_I
    if f_lo == 0:
        return params_from_r0(config, lo)
    if f_hi == 0:
        return params_from_r0(config, hi)
    if np.sign(f_lo) == np.sign(f_hi):
        raise NoSignChangeError(
            f"Re I has the same sign at both ends of [{lo}, {hi}] ({f_lo:.3g}, {f_hi:.3g})")
    r0 = brentq(lambda r: re_I_at(config, r, tol).re_I, lo, hi, xtol=xtol)
    res = re_I_at(config, r0, tol)
    if abs(res.re_I) > max(tol, 10 * res.quadrature_error):
        raise QuadratureFailureError(f"|Re I(R0)| = {abs(res.re_I):.3g} at the computed root")
    return params_from_r0(config, r0)
