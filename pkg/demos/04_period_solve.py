"""Selecting R0 by the period condition.

For real data the real part of the period over the contour through a1 and
b1 becomes a regularised integral over the real line.  It changes sign
between R0 = 0.0774 and 0.0775; Brent's method finds the zero, and the same
period recomputed along a closed cycle in the z-plane confirms it.
"""
from hypercurve import build_config, build_curve, solve_r0, validating_cycle
from hypercurve.periods import re_I_at, sweep_sign_changes

cfg = build_config(-1, 1, -0.375, 0.5)

for R0 in (0.0774, 0.0775):
    res = re_I_at(cfg, R0)
    print(f"Re I({R0}) = {res.re_I:+.6f}   (quadrature error {res.quadrature_error:.1e}, "
          f"{res.evaluations} evaluations)")

print("sign changes on [-0.3, 0.35]:", sweep_sign_changes(cfg, -0.3, 0.35, 13))

g = solve_r0(cfg, (0.05, 0.10))
print(f"R0 = {g.R0.real:.10f},  c = {g.params.c.real:.10f},  d = {g.params.d.real:.10f}")

cycle = validating_cycle(build_curve(cfg, g.params))
print(f"period along the z-plane cycle at that R0: {cycle:.2e}")
