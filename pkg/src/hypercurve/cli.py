"""Command-line front end.

    hypercurve curve    --points -1 1 -0.375 0.5 --mode given-cd --c 0 --d -0.4
    hypercurve solve-r0 --points -1 1 -0.375 0.5 --r0-bracket 0.05,0.10
    hypercurve gamma    --points 1 -1 0.1 -0.1 --mode symmetric --out-svg g.svg
    hypercurve hp       --points -2 1 -1 4 --hp-n 20,20

A point is written ``re,im`` or as a Python complex literal (``0.5-1j``).
Results go to stdout as JSON (complex numbers as [re, im]) unless
``--out-json`` is given.  Exit codes: 0 success, 2 input error, 3 numerical
failure; failures also emit a JSON object with an ``error`` key.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

import numpy as np

from .curve import CurveParams, build_config, build_curve, cubic_roots
from .errors import HypercurveError, InputError
from .gamma import GammaOptions, trace_gamma, validating_cycle
from .genus1 import params_from_r0, symmetric_pairing, symmetric_params
from .hppade import solve_hp
from .periods import re_I, solve_r0
from .uniform import build_hyper, forward, inverse

COMMANDS = ("curve", "hyper", "genus1", "solve-r0", "gamma", "hp", "verify")


@dataclass
class JobSpec:
    command: str
    points: list[complex]
    mode: str = "given-cd"
    c: complex = 0j
    d: complex = 0j
    r0: complex | None = None
    bracket: tuple[float, float] = (0.05, 0.10)
    tol: float = 1e-6
    hp_n: tuple[int, int] = (20, 20)
    step: float | None = None
    out_json: str | None = None
    out_csv: str | None = None
    out_svg: str | None = None


def parse_complex(text) -> complex:
    if isinstance(text, (list, tuple)):
        if len(text) != 2:
            raise InputError(f"expected [re, im], got {text}")
        return complex(float(text[0]), float(text[1]))
    if isinstance(text, (int, float, complex)):
        return complex(text)
    s = str(text).strip()
    try:
        if "," in s:
            re_, im_ = s.split(",")
            return complex(float(re_), float(im_))
        return complex(s.replace(" ", ""))
    except ValueError:
        raise InputError(f"cannot read {text!r} as a complex number") from None


def _pair(text, cast):
    try:
        a, b = str(text).split(",")
        return cast(a), cast(b)
    except ValueError:
        raise InputError(f"expected two comma-separated values, got {text!r}") from None


def enc(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hypercurve", description=__doc__.split("\n\n")[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--points", nargs=4, metavar="Z", help="a1 b1 a2 b2")
    p.add_argument("--input", help="JSON file with points (and optionally c, d, r0)")
    p.add_argument("--mode", choices=("symmetric", "genus1", "given-cd"), default=None)
    p.add_argument("--c", default=None)
    p.add_argument("--d", default=None)
    p.add_argument("--r0", default=None)
    p.add_argument("--r0-bracket", default=None, help="lo,hi")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--hp-n", default="20,20", help="n1,n2")
    p.add_argument("--step", type=float, default=None, help="Gamma tracer step")
    p.add_argument("--out-json")
    p.add_argument("--out-csv")
    p.add_argument("--out-svg")
    return p


def spec_from_args(ns: argparse.Namespace) -> JobSpec:
    doc = {}
    if ns.input:
        try:
            with open(ns.input) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read input file: {exc}") from None
    raw = ns.points if ns.points else doc.get("points")
    if raw is None or len(raw) != 4:
        raise InputError("four branch points are required (--points or --input)")
    pts = [parse_complex(z) for z in raw]
    c = ns.c if ns.c is not None else doc.get("c")
    d = ns.d if ns.d is not None else doc.get("d")
    r0 = ns.r0 if ns.r0 is not None else doc.get("r0")
    mode = ns.mode or doc.get("mode") or ("genus1" if r0 is not None else "given-cd")
    bracket = ns.r0_bracket or doc.get("r0_bracket")
    if isinstance(bracket, str):
        bracket = _pair(bracket, float)
    return JobSpec(
        command=ns.command, points=pts, mode=mode,
        c=parse_complex(c) if c is not None else 0j,
        d=parse_complex(d) if d is not None else 0j,
        r0=parse_complex(r0) if r0 is not None else None,
        bracket=tuple(bracket) if bracket else (0.05, 0.10),
        tol=ns.tol, hp_n=_pair(ns.hp_n, int), step=ns.step,
        out_json=ns.out_json, out_csv=ns.out_csv, out_svg=ns.out_svg)


# -- pipeline ---------------------------------------------------------------

def _params(spec: JobSpec, config):
    if spec.mode == "symmetric":
        a, b = symmetric_pairing(spec.points)
        return symmetric_params(a, b), {}
    if spec.mode == "genus1":
        if spec.r0 is None:
            raise InputError("--mode genus1 needs --r0")
        g = params_from_r0(config, spec.r0)
        return g.params, {"R0": enc(g.R0), "c1": enc(g.c1), "c2": enc(g.c2)}
    return CurveParams(spec.c, spec.d), {}


def _curve_doc(curve) -> dict:
    return {
        "c": enc(curve.params.c), "d": enc(curve.params.d),
        "genus": curve.genus,
        "hard_edges": [enc(z) for z in curve.hard_edges],
        "soft_edges": [enc(z) for z in curve.soft_edges],
        "nodes": [enc(z) for z in curve.nodes],
        "dtilde": [enc(z) for z in curve.dtilde.coeffs],
    }


def _verify(curve) -> dict:
    hyper = build_hyper(curve)
    cfg = curve.config
    grid = cfg.centroid + cfg.scale * np.array(
        [0.37 + 0.21j, -0.44 + 0.13j, 0.05 - 0.61j, 1.3 + 0.7j, -2.1 - 0.4j, 0.9j])
    vieta = trip = ultra = 0.0
    for z in grid:
        if curve.critical_distance(z) < 1e-6 * cfg.scale:
            continue
        h = cubic_roots(curve, z)
        cc = curve.cubic_coeffs(z)  # 2 P1, -3 P2, 0, Pi4
        e1 = h.sum()
        e2 = h[0] * h[1] + h[0] * h[2] + h[1] * h[2]
        e3 = h.prod()
        ref = abs(cc[1] / cc[3]) + abs(cc[0] / cc[3]) + max(abs(h)) ** 3
        vieta = max(vieta, abs(e1) / max(abs(h)),
                    abs(e2 - cc[1] / cc[3]) / ref, abs(e3 + cc[0] / cc[3]) / ref)
        for hv in h:
            sp = forward(hyper, z, hv)
            back = inverse(hyper, sp.R, sp.Delta)
            trip = max(trip, abs(back.z - z) / max(1, abs(z)), abs(back.h - hv) / abs(hv))
            ultra = max(ultra, hyper.ultra_residual(sp.R, sp.Delta) / (1 + abs(sp.R) ** 6))
    checks = [
        {"name": "vieta", "worst": vieta, "passed": bool(vieta < 1e-10)},
        {"name": "round_trip", "worst": trip, "passed": bool(trip < 1e-10)},
        {"name": "ultraelliptic_residual", "worst": ultra, "passed": bool(ultra < 1e-9)},
        {"name": "genus_agreement", "worst": float(abs(hyper.genus - curve.genus)),
         "passed": hyper.genus == curve.genus},
    ]
    return {"checks": checks, "passed": all(c["passed"] for c in checks)}


def run(spec: JobSpec) -> tuple[int, dict, dict]:
    """Execute a job; returns (exit code, JSON document, extra files)."""
    config = build_config(*spec.points)
    doc = {"command": spec.command, "points": [enc(z) for z in spec.points]}
    files: dict = {}
    code = 0
    if spec.command == "solve-r0":
        g = solve_r0(config, spec.bracket, spec.tol)
        res = re_I(config, g, spec.tol)
        doc.update({"R0": enc(g.R0), "c1": enc(g.c1), "c2": enc(g.c2), "re_I": res.re_I,
                    "quadrature_error": res.quadrature_error})
        doc.update(_curve_doc(build_curve(config, g.params)))
    elif spec.command == "hp":
        hp = solve_hp(*spec.points, n=spec.hp_n)
        doc.update({"n": list(hp.n), "denominator": [enc(z) for z in hp.denominator.coeffs],
                    "zeros": [enc(z) for z in hp.zeros.values],
                    "rank_deficient": hp.rank_deficient, "full_degree": hp.full_degree,
                    "defect": hp.defect})
        if spec.out_svg:
            files["svg"] = render_svg(config.points, np.zeros(0, complex), [], hp.zeros.values)
    else:
        params, extra = _params(spec, config)
        curve = build_curve(config, params)
        doc.update(extra)
        doc.update(_curve_doc(curve))
        if spec.command == "hyper":
            hyper = build_hyper(curve)
            doc.update({"k2": [enc(z) for z in hyper.k2.coeffs],
                        "delta2": [enc(z) for z in hyper.delta2.coeffs],
                        "eps": [[enc(r), m] for r, m in hyper.eps.roots],
                        "hyper_genus": hyper.genus})
        elif spec.command == "genus1":
            if spec.mode == "genus1":
                try:
                    res = re_I(config, params_from_r0(config, spec.r0), spec.tol)
                    doc.update({"re_I": res.re_I, "quadrature_error": res.quadrature_error})
                except HypercurveError as exc:
                    doc["re_I_error"] = str(exc)
        elif spec.command == "gamma":
            gs = trace_gamma(curve, GammaOptions(step=spec.step))
            doc["arcs"] = [{"id": i, "pair": list(a.pair), "seed": enc(a.seed),
                            "seed_kind": a.seed_kind, "end": a.end_reason,
                            "points": len(a.points), "max_drift": a.max_drift}
                           for i, a in enumerate(gs.arcs)]
            doc["step"] = gs.step
            if curve.genus == 1 and all(abs(z.imag) <= 1e-12 * config.scale
                                        for z in (config.a1, config.b1)):
                try:
                    doc["validating_cycle"] = validating_cycle(curve)
                except HypercurveError as exc:
                    doc["validating_cycle_error"] = str(exc)
            if spec.out_csv:
                files["csv"] = render_csv(gs)
            if spec.out_svg:
                files["svg"] = render_svg(curve.hard_edges, curve.soft_edges,
                                          [a.points for a in gs.arcs])
        elif spec.command == "verify":
            v = _verify(curve)
            doc.update(v)
            code = 0 if v["passed"] else 3
    return code, doc, files


# -- emitters ---------------------------------------------------------------

def render_csv(gs) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["arc_id", "pair", "x", "y"])
    for i, arc in enumerate(gs.arcs):
        tag = f"{arc.pair[0]}-{arc.pair[1]}"
        for z in arc.points:
            w.writerow([i, tag, repr(float(z.real)), repr(float(z.imag))])
    return buf.getvalue()


def render_svg(hard, soft, arcs, dots=(), size: int = 600) -> str:
    """Static drawing: arcs as polylines, x for hard edges, o for soft edges."""
    hard = np.asarray(hard, complex)
    soft = np.asarray(soft, complex)
    dots = np.asarray(dots, complex)
    edges = np.concatenate([hard, soft])
    lo_x, hi_x = edges.real.min(), edges.real.max()
    lo_y, hi_y = edges.imag.min(), edges.imag.max()
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-12)
    cx, cy = 0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y)
    half = 0.5 * span + 0.2 * span  # 20% of the span as margin on each side
    k = size / (2 * half)

    def xy(z):
        return (z.real - cx + half) * k, (cy + half - z.imag) * k

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           f'<rect width="{size}" height="{size}" fill="white"/>']
    for pts in arcs:
        coords = " ".join("{:.2f},{:.2f}".format(*xy(z)) for z in pts)
        out.append(f'<polyline points="{coords}" fill="none" stroke="black" stroke-width="1"/>')
    for z in dots:
        x, y = xy(z)
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="2" fill="red"/>')
    for z in hard:
        x, y = xy(z)
        out.append(f'<path d="M{x - 5:.2f},{y - 5:.2f}L{x + 5:.2f},{y + 5:.2f}'
                   f'M{x - 5:.2f},{y + 5:.2f}L{x + 5:.2f},{y - 5:.2f}" stroke="blue" stroke-width="2"/>')
    for z in soft:
        x, y = xy(z)
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="5" fill="none" stroke="green" stroke-width="2"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _write(path: str, text: str) -> None:
    with open(path, "w") as fh:
        fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        spec = spec_from_args(ns)
        code, doc, files = run(spec)
    except HypercurveError as exc:
        code = 2 if isinstance(exc, InputError) else 3
        err = {"error": {"type": type(exc).__name__, "message": str(exc), "exit_code": code}}
        text = _dump(err)
        if ns.out_json:
            _write(ns.out_json, text)
        sys.stdout.write(text)
        return code
    text = _dump(doc)
    if spec.out_json:
        _write(spec.out_json, text)
    else:
        sys.stdout.write(text)
    if "csv" in files:
        _write(spec.out_csv, files["csv"])
    if "svg" in files:
        _write(spec.out_svg, files["svg"])
    return code


if __name__ == "__main__":
    sys.exit(main())
