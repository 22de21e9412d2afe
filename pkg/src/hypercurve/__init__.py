"""Third-order algebraic curves attached to four branch points.

The curve  h^3 - 3 (P2/Pi4) h + 2 (P1/Pi4) = 0,  its hyperelliptic
uniformization, the genus-1 family parametrized by R0, the period condition
that selects R0, the trajectory set Gamma and a Hermite-Pade overlay.
"""
from .curve import (BranchConfig, CubicCurve, CurveParams, branches_at, build_config,
                    build_curve)
from .errors import HypercurveError, InputError, NumericalError
from .gamma import GammaOptions, GammaSet, pair_potential, trace_gamma, validating_cycle
from .genus1 import (Genus1Params, params_from_r0, soft_edges_symmetric,
                     symmetric_params)
from .hppade import HPSystem, solve_hp
from .periods import PeriodResult, integrand_J, re_I, regularizer, solve_r0
from .poly import CPoly, RootSet, roots
from .uniform import HyperCurve, SurfacePoint, build_hyper, forward, hdz_integrand, inverse

__all__ = [
    "BranchConfig", "CPoly", "CubicCurve", "CurveParams", "GammaOptions", "GammaSet",
    "Genus1Params", "HPSystem", "HyperCurve", "HypercurveError", "InputError",
    "NumericalError", "PeriodResult", "RootSet", "SurfacePoint", "branches_at",
    "build_config", "build_curve", "build_hyper", "forward", "hdz_integrand",
    "integrand_J", "inverse", "pair_potential", "params_from_r0", "re_I", "regularizer",
    "roots", "soft_edges_symmetric", "solve_hp", "solve_r0", "symmetric_params",
    "trace_gamma", "validating_cycle",
]
