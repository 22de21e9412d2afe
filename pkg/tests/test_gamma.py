import numpy as np
import pytest

from hypercurve import build_curve, pair_potential, re_I, solve_r0
from hypercurve.curve import cubic_roots
from hypercurve.errors import BranchCollisionError, InputError
from hypercurve.gamma import (GammaOptions, _close_pair, departure_directions, hausdorff,
                              integrate_pair, trace_gamma, validating_cycle)


def _on_real_axis(arc):
    return np.max(np.abs(arc.points.imag)) < 1e-9


def test_closed_contour_without_branch_points(fig2_curve):
    loop = list(2.5 + 2.5j + 0.4 * np.exp(2j * np.pi * np.linspace(0, 1, 33)))
    for l, k in ((0, 1), (0, 2), (1, 2)):
        assert abs(pair_potential(fig2_curve, l, k, loop)) < 1e-8


def test_pair_potential_stabilises_at_infinity(fig2_curve):
    vals = {}
    for pair in ((1, 2), (0, 1)):
        vals[pair] = [pair_potential(fig2_curve, *pair, [50 + 20j, R + 20j]) for R in (1e3, 1e4, 1e5)]
        a, b, c = vals[pair]
        assert abs(c - b) < abs(b - a) + 1e-12
        assert abs(c - b) < 1e-3


def test_pair_potential_refuses_paths_through_edges(fig2_curve):
    with pytest.raises(InputError):
        pair_potential(fig2_curve, 0, 1, [0.5j, 1.0, 2 + 0.5j])
    with pytest.raises(InputError):
        pair_potential(fig2_curve, 0, 1, [0.5j])


def test_collision_is_reported(symmetric_curve):
    e = symmetric_curve.soft_edges[1]
    z0 = e + 0.05j
    v = cubic_roots(symmetric_curve, z0)
    l, k = _close_pair(v)
    with pytest.raises(BranchCollisionError):
        integrate_pair(symmetric_curve, [z0, e], v, l, k, collision_tol=1e-6)


def test_validating_cycle_matches_re_i(section5_config):
    g = solve_r0(section5_config, (0.05, 0.10))
    res = re_I(section5_config, g)
    val = validating_cycle(build_curve(section5_config, g.params))
    assert abs(val) < 10 * max(res.quadrature_error, 1e-9)


def test_validating_cycle_needs_real_a1_b1(fig2_curve):
    from hypercurve import build_config
    curve = build_curve(build_config(1j, -1, 0.1, -0.1), fig2_curve.params)
    with pytest.raises(InputError):
        validating_cycle(curve)


def test_departure_counts(symmetric_curve):
    assert len(departure_directions(symmetric_curve, 1.0, "hard", 0.01)) == 1
    e = symmetric_curve.soft_edges[0]
    dirs = departure_directions(symmetric_curve, e, "soft", 0.01)
    assert len(dirs) == 3
    angles = np.sort([d[0] for d in dirs])
    gaps = np.diff(np.concatenate([angles, [angles[0] + 2 * np.pi]]))
    assert np.allclose(gaps, 2 * np.pi / 3, atol=0.05)


def test_symmetric_gamma_structure(symmetric_gamma):
    arcs = symmetric_gamma.arcs
    assert all(a.end_reason == "edge" for a in arcs)
    # nested real intervals: [-0.1, 0.1] inside [-0.34, 0.34]-lens inside [-1, 1]
    real = [a for a in arcs if _on_real_axis(a)]
    spans = {(round(min(a.points.real), 3), round(max(a.points.real), 3)) for a in real}
    assert (-0.1, 0.1) in spans
    assert (-1.0, -0.34) in spans and (0.34, 1.0) in spans
    lens = [a for a in arcs if not _on_real_axis(a)]
    assert len(lens) == 4 and all(abs(a.points[0]) == pytest.approx(0.34003316, abs=1e-6)
                                  for a in lens)


def test_symmetric_gamma_sorted(symmetric_gamma):
    seeds = [(a.seed.real, a.seed.imag, a.direction) for a in symmetric_gamma.arcs]
    assert seeds == sorted(seeds)


def test_drift_by_independent_integration(symmetric_curve, symmetric_gamma):
    """Re int (h_l - h_k) dz recomputed along each emitted polyline."""
    for arc in symmetric_gamma.arcs:
        l, k = arc.pair
        inner = arc.points[1:-1]
        val = pair_potential(symmetric_curve, l, k, inner, counterterm=False)
        assert abs(val) < 1e-6 * arc.arclength


def test_overlapping_topology(fig2_gamma):
    real = [a for a in fig2_gamma.arcs if _on_real_axis(a)]
    spans = {(round(min(a.points.real), 3), round(max(a.points.real), 3)) for a in real}
    assert (-2.0, -1.002) in spans      # [a1, soft edge just left of -1]
    assert (-1.0, 1.0) in spans
    assert (1.043, 4.0) in spans
    assert all(a.end_reason == "edge" for a in fig2_gamma.arcs)
    assert all(a.max_drift < 1e-9 for a in fig2_gamma.arcs)


def test_options_resolve_defaults(symmetric_curve):
    o = GammaOptions().resolved(symmetric_curve)
    assert o.step == pytest.approx(2e-3) and o.box == pytest.approx(2.0)


def test_small_box_stops_arcs(symmetric_curve):
    gs = trace_gamma(symmetric_curve, GammaOptions(box=0.2, step=5e-3))
    assert any(a.end_reason == "box" for a in gs.arcs)
    for a in gs.arcs:
        if abs(a.seed.real) < 0.2:
            assert np.max(np.abs(a.points.real)) < 0.2 + 2 * gs.step
        else:
            assert a.end_reason == "box" and len(a.points) < 10


def test_hausdorff():
    p = np.array([0, 1, 1j])
    assert hausdorff(p, p) == 0
    assert hausdorff(p, p + 0.5) == pytest.approx(0.5)
