"""Tracing the set where two branches of g = Re G coincide.

Arcs leave every hard edge (x) and soft edge (o) along the directions where
Re int (h_l - h_k) dz stays zero.  The symmetric case shows two nested
intervals joined by a lens; the picture is written as SVG.

usage: python 05_gamma_trace.py [out.svg]
"""
import sys

import numpy as np

from hypercurve import build_config, build_curve, symmetric_params, trace_gamma
from hypercurve.cli import render_csv, render_svg
from hypercurve.gamma import hausdorff

out = sys.argv[1] if len(sys.argv) > 1 else "gamma_symmetric.svg"

curve = build_curve(build_config(1, -1, 0.1, -0.1), symmetric_params(1, 0.1))
gs = trace_gamma(curve)

for i, arc in enumerate(gs.arcs):
    print(f"arc {i:2d}: from {arc.seed.real:+.4f} ({arc.seed_kind}), pair {arc.pair}, "
          f"{len(arc.points):4d} points, ends at {arc.points[-1]:.4f} ({arc.end_reason}), "
          f"drift {arc.max_drift:.1e}")

cloud = gs.point_cloud()
print(f"symmetry z -> -z: Hausdorff distance {hausdorff(cloud, -cloud) / gs.step:.2e} steps")

with open(out, "w") as fh:
    fh.write(render_svg(curve.hard_edges, curve.soft_edges, [a.points for a in gs.arcs]))
print("wrote", out, f"({len(render_csv(gs).splitlines()) - 1} polyline vertices)")
