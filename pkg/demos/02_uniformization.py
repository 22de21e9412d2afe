"""The two-sheeted model of the three-sheeted curve.

Every point (z, h) of the cubic curve maps to (R, Delta) with
Delta^2 = Pi4'(R)^2 - 4 Pi4(R) K2(R), a polynomial of degree six.  We show the
worked example {-1, -3/8, 3/8, 1} and push a few points back and forth.
"""
import numpy as np

from hypercurve import build_config, build_curve, build_hyper, forward, inverse, symmetric_params
from hypercurve.curve import cubic_roots

cfg = build_config(-1, -0.375, 0.375, 1)
hyper = build_hyper(build_curve(cfg, symmetric_params(1, 0.375)))

print("K2        =", hyper.k2)
print("Delta~^2  =", hyper.delta2)
print("  compare   R^2 (4R^4 - 73/16 R^2 + 3601/1024):",
      np.allclose(hyper.delta2.coeffs, [0, 0, 3601 / 1024, 0, -73 / 16, 0, 4]))
print("branch points of the two-sheeted surface:")
for r, m in hyper.eps.roots:
    print(f"    {r:.12f}   multiplicity {m}")
print()

z = 0.6 + 0.2j
print(f"the three sheets over z = {z}:")
for h in cubic_roots(hyper.curve, z):
    sp = forward(hyper, z, h)
    back = inverse(hyper, sp.R, sp.Delta)
    print(f"    h = {h:.6f}  ->  R = {sp.R:.6f}, Delta = {sp.Delta:.6f}"
          f"  ->  back: |dz| = {abs(back.z - z):.1e}, |dh| = {abs(back.h - h):.1e}")
