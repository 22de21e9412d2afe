"""Genus-1 curves: the R0 parametrization and the symmetric closed forms.

Writing K2(R) = 3R^2 + c1 R + c2 with c1 = 2(c - s1), c2 = s2 - 3d, the
conditions  Delta~^2(R0) = 0 = Delta~^2'(R0)  are linear in (c1, c2).  Their
solution puts a double zero of Delta~^2 at R0, which drops the genus of h
to (at most) one.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curve import BranchConfig, CurveParams, build_curve
from .errors import DegenerateInputError, NonConvergenceError, PoleAtR0Error
from .poly import CPoly, eval_bound, peval
from .uniform import HyperCurve, build_hyper

POLE_RTOL = 1e-12


@dataclass(frozen=True)
class Genus1Params:
    R0: complex
    c1: complex
    c2: complex
    params: CurveParams
    genus: int


def _pi4_at(config: BranchConfig, R0: complex):
    pi4 = config.pi4
    p = complex(peval(pi4, R0))
    if abs(p) <= POLE_RTOL * eval_bound(pi4, R0):
        raise PoleAtR0Error(f"R0={R0} is a zero of Pi4")
    return p, complex(peval(pi4.deriv(), R0)), complex(peval(pi4.deriv(2), R0))


def c1_c2(config: BranchConfig, R0: complex) -> tuple[complex, complex]:
    """Closed-form solution of the 2x2 double-zero system."""
    R0 = complex(R0)
    p, d1, d2 = _pi4_at(config, R0)
    den = 16 * p * p
    c1 = (8 * p * d1 * d2 - 96 * R0 * p * p - 4 * d1 ** 3) / den
    c2 = (-8 * R0 * p * d1 * d2 + 48 * R0 ** 2 * p * p
          + 4 * d1 ** 3 * R0 + 4 * d1 ** 2 * p) / den
    return c1, c2


def params_from_r0(config: BranchConfig, R0: complex) -> Genus1Params:
    """(c, d) placing a double zero of Delta~^2 at R0.

    The genus of the resulting curve is classified, not assumed: special R0
    values degenerate further to genus 0.
    """
    c1, c2 = c1_c2(config, R0)
    params = CurveParams(config.s1 + c1 / 2, (config.s2 - c2) / 3)
    hyper = build_hyper(build_curve(config, params))
    return Genus1Params(complex(R0), c1, c2, params, hyper.genus)


def k2_from_r0(config: BranchConfig, R0: complex) -> CPoly:
    """K2 written around R0 (expanded in R about the origin).

    The linear term carries  2 Pi4 Pi4' Pi4'' - Pi4'^3; with a plus sign in
    front of Pi4'^3 the slope would contradict the (c1, c2) solution and the
    double zero at R0 would be lost.
    """
    R0 = complex(R0)
    p, d1, d2 = _pi4_at(config, R0)
    shift = CPoly([-R0, 1.0])
    inner = (12 * p * p) * shift * shift + (2 * p * d1 * d2 - d1 ** 3) * shift + p * d1 * d1
    return inner * (1 / (4 * p * p))


def p_polys_from_k2(config: BranchConfig, k2: CPoly) -> tuple[CPoly, CPoly]:
    """P1 = Pi4'''/6 - K2'/2 and P2 = Pi4''/6 - K2/3."""
    pi4 = config.pi4
    return pi4.deriv(3) * (1 / 6) - k2.deriv() * 0.5, pi4.deriv(2) * (1 / 6) - k2 * (1 / 3)


def recover_r0(hyper: HyperCurve) -> complex:
    """The double zero of Delta~^2 of a genus-1 curve."""
    doubles = hyper.eps.with_multiplicity(2)
    if len(doubles) != 1:
        raise NonConvergenceError(
            f"expected one double zero of Delta~^2, found multiplicities {hyper.eps.multiplicities}")
    return complex(doubles[0])


def symmetric_params(a: complex, b: complex) -> CurveParams:
    """c = 0 and d = -(a^2 + b^2)/3 for the points {a, -a, b, -b}."""
    a, b = complex(a), complex(b)
    pts = np.array([a, -a, b, -b])
    dist = np.abs(pts[:, None] - pts[None, :])[np.triu_indices(4, 1)]
    if dist.min() <= 1e-12 * max(dist.max(), 1e-300):
        raise DegenerateInputError(f"a={a}, b={b}: the points a, -a, b, -b are not distinct")
    return CurveParams(0j, -(a * a + b * b) / 3)


def soft_edges_symmetric(a: complex, b: complex) -> tuple[complex, complex]:
    """+-(a^2 + b^2)^2 / (3 sqrt(a^6 + b^6)), root taken with Re >= 0."""
    a, b = complex(a), complex(b)
    s = a ** 6 + b ** 6
    if abs(s) <= 1e-14 * (abs(a) ** 6 + abs(b) ** 6):
        raise DegenerateInputError(f"a^6 + b^6 vanishes for a={a}, b={b}")
    root = np.sqrt(s)
    if root.real < 0:
        root = -root
    e = (a * a + b * b) ** 2 / (3 * root)
    return complex(e), complex(-e)


def symmetric_pairing(points) -> tuple[complex, complex]:
    """Split four points into pairs {a, -a}, {b, -b}; returns (a, b).

    ``a`` is the first point in input order; ``b`` the first point of the
    remaining pair.
    """
    pts = [complex(p) for p in points]
    scale = max(abs(p - q) for p in pts for q in pts)
    tol = 1e-9 * max(scale, 1e-300)
    a = pts[0]
    partner = [i for i in range(1, 4) if abs(pts[i] + a) <= tol]
    if len(partner) != 1:
        raise DegenerateInputError(f"{pts} is not of the form {{a, -a, b, -b}}")
    rest = [pts[i] for i in range(1, 4) if i != partner[0]]
    if abs(rest[0] + rest[1]) > tol:
        raise DegenerateInputError(f"{pts} is not of the form {{a, -a, b, -b}}")
    return a, rest[0]
