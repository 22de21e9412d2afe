"""Forcing genus one: the R0 family.

Choosing a point R0 and asking Delta~^2 to vanish there to second order fixes
(c, d) in closed form.  Each R0 gives a genus-1 curve; the period condition of
the next demo picks the right one.
"""
from hypercurve import build_config, build_curve, build_hyper, params_from_r0
from hypercurve.genus1 import recover_r0
from hypercurve.poly import peval

cfg = build_config(-1, 1, -0.375, 0.5)
print(f"{'R0':>8} {'c':>22} {'d':>22} {'genus':>5} {'|D(R0)|':>9} {'|D`(R0)|':>9} {'recovered':>10}")
for R0 in (-0.8, -0.1, 0.0, 0.0775, 0.3, 2.0 + 0.5j):
    g = params_from_r0(cfg, R0)
    hyper = build_hyper(build_curve(cfg, g.params))
    d0 = abs(peval(hyper.delta2, R0))
    d1 = abs(peval(hyper.delta2.deriv(), R0))
    back = recover_r0(hyper) if hyper.genus == 1 else float("nan")
    print(f"{R0!s:>8} {g.params.c:>22.6f} {g.params.d:>22.6f} {g.genus:>5} {d0:9.1e} {d1:9.1e} "
          f"{back:10.6f}")
