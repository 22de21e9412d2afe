"""Hermite-Pade zeros against the traced set.

The common denominator of the simultaneous rational approximants to
log((z - a_j)/(z - b_j)) has its zeros accumulating on the same set.  For the
overlapping configuration {-2, 1, -1, 4} (genus two) we compute the degree-40
denominator and measure how far each zero lies from the traced arcs.

usage: python 06_hermite_pade.py [out.svg]
"""
import sys

import numpy as np

from hypercurve import CurveParams, build_config, build_curve, solve_hp, trace_gamma
from hypercurve.cli import render_svg

out = sys.argv[1] if len(sys.argv) > 1 else "hermite_pade_overlay.svg"

curve = build_curve(build_config(-2, 1, -1, 4), CurveParams(-0.2736665608, -1.689837898))
print("genus", curve.genus, " soft edges", np.round(curve.soft_edges, 5))

gs = trace_gamma(curve)
hp = solve_hp(-2, 1, -1, 4, n=(20, 20))
print(f"denominator degree {hp.denominator.degree}, defect {hp.defect:.1e}, "
      f"normal index: {not hp.rank_deficient}")

cloud = gs.point_cloud()
dist = np.min(np.abs(hp.zeros.values[:, None] - cloud[None, :]), axis=1)
print(f"distance from zeros to the arcs: median {np.median(dist):.4f}, max {dist.max():.4f}")
print(f"fraction within 0.1: {np.mean(dist < 0.1):.0%}")

with open(out, "w") as fh:
    fh.write(render_svg(curve.hard_edges, curve.soft_edges, [a.points for a in gs.arcs],
                        hp.zeros.values))
print("wrote", out)
