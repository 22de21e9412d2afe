import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from hypercurve import (build_config, build_curve, build_hyper, params_from_r0,
                        soft_edges_symmetric, symmetric_params)
from hypercurve.errors import DegenerateInputError, PoleAtR0Error
from hypercurve.genus1 import k2_from_r0, p_polys_from_k2, recover_r0, symmetric_pairing
from hypercurve.poly import peval

from conftest import SECTION5

cplx = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)
configs = st.lists(cplx, min_size=4, max_size=4).filter(
    lambda p: (lambda d: d.max() > 0.5 and d[np.triu_indices(4, 1)].min() > 0.05 * d.max())(
        np.abs(np.subtract.outer(np.array(p), np.array(p)))))


def _solve_2x2(cfg, R0):
    """c1, c2 from Delta~^2(R0) = 0 = Delta~^2'(R0), written as a linear system."""
    p = complex(peval(cfg.pi4, R0))
    d1 = complex(peval(cfg.pi4.deriv(), R0))
    d2 = complex(peval(cfg.pi4.deriv(2), R0))
    # Delta~^2 = d1^2 - 4 p (3R^2 + c1 R + c2)
    A = np.array([[4 * p * R0, 4 * p],
                  [4 * d1 * R0 + 4 * p, 4 * d1]])
    b = np.array([d1 ** 2 - 12 * p * R0 ** 2,
                  2 * d1 * d2 - 12 * d1 * R0 ** 2 - 24 * p * R0])
    return np.linalg.solve(A, b)


@pytest.mark.parametrize("a,b,d", [
    (1, 0.1, -101 / 300),
    (1, 0.45, -0.400833),
    (1 + 0.25j, -1 + 0.25j, -0.625),
    (1 + 0.25j, -0.9 + 0.15j, -0.575 - 0.0766667j),
])
def test_symmetric_d(a, b, d):
    p = symmetric_params(a, b)
    assert p.c == 0 and abs(p.d - d) < 1e-6


def test_symmetric_degenerate():
    with pytest.raises(DegenerateInputError):
        symmetric_params(1, -1)
    with pytest.raises(DegenerateInputError):
        symmetric_params(0, 1)


def test_symmetric_dtilde_degree_drops():
    for a, b in ((1, 0.1), (1 + 0.25j, -0.9 + 0.15j)):
        cfg = build_config(a, -a, b, -b)
        assert build_curve(cfg, symmetric_params(a, b)).dtilde.degree <= 2


def test_soft_edges_match_curve():
    e, me = soft_edges_symmetric(1, 0.375)
    assert me == -e and e.real > 0
    curve = build_curve(build_config(-1, -0.375, 0.375, 1), symmetric_params(1, 0.375))
    soft = np.sort_complex(curve.soft_edges)
    assert np.allclose(soft, np.sort_complex([e, me]), atol=1e-12)
    assert abs(e - 0.4330734) < 1e-6


def test_soft_edges_singular():
    with pytest.raises(DegenerateInputError):
        soft_edges_symmetric(1, 1j)


def test_soft_edges_small_b():
    e, _ = soft_edges_symmetric(1, 1e-6)
    assert abs(e - 1 / 3) < 1e-11


def test_symmetric_pairing():
    assert symmetric_pairing([-1, 1, -0.375, 0.375]) == (-1, -0.375)
    with pytest.raises(DegenerateInputError):
        symmetric_pairing(SECTION5)


def test_section5_double_root(section5_config):
    g = params_from_r0(section5_config, 0.0775)
    hyper = build_hyper(build_curve(section5_config, g.params))
    assert abs(peval(hyper.delta2, 0.0775)) < 1e-12
    assert abs(peval(hyper.delta2.deriv(), 0.0775)) < 1e-12
    assert g.genus == 1
    cfg = section5_config
    assert abs(g.c1 - 2 * (g.params.c - cfg.s1)) < 1e-14
    assert abs(g.c2 - (cfg.s2 - 3 * g.params.d)) < 1e-14


def test_symmetric_limit_is_r0_zero():
    cfg = build_config(-1, 1, -0.375, 0.375)
    sym = symmetric_params(1, 0.375)
    g = params_from_r0(cfg, 0.0)
    assert abs(g.params.c - sym.c) < 1e-14 and abs(g.params.d - sym.d) < 1e-14
    near = params_from_r0(cfg, 1e-4)
    assert abs(near.params.d - sym.d) < 1e-4 and abs(near.params.c) < 1e-3


def test_pole_at_r0(section5_config):
    with pytest.raises(PoleAtR0Error):
        params_from_r0(section5_config, 0.5)


@settings(max_examples=100, deadline=None)
@given(configs, cplx)
def test_closed_form_matches_linear_solve(pts, R0):
    cfg = build_config(*pts)
    assume(np.min(np.abs(cfg.points - R0)) > 0.05 * cfg.scale)
    g = params_from_r0(cfg, R0)
    c1, c2 = _solve_2x2(cfg, complex(R0))
    assert abs(g.c1 - c1) <= 1e-8 * (1 + abs(c1))
    assert abs(g.c2 - c2) <= 1e-8 * (1 + abs(c2))


@settings(max_examples=100, deadline=None)
@given(configs, cplx)
def test_k2_and_p_polys_closed_forms(pts, R0):
    cfg = build_config(*pts)
    assume(np.min(np.abs(cfg.points - R0)) > 0.05 * cfg.scale)
    g = params_from_r0(cfg, R0)
    curve = build_curve(cfg, g.params)
    hyper = build_hyper(curve)
    k2 = k2_from_r0(cfg, R0)
    assert k2.allclose(hyper.k2, rtol=1e-10, atol=1e-10)
    p1, p2 = p_polys_from_k2(cfg, k2)
    assert p1.allclose(curve.p1, rtol=1e-10, atol=1e-10)
    assert p2.allclose(curve.p2, rtol=1e-10, atol=1e-10)
    assert g.genus <= 1


@settings(max_examples=100, deadline=None)
@given(configs, cplx)
def test_recover_r0(pts, R0):
    cfg = build_config(*pts)
    assume(np.min(np.abs(cfg.points - R0)) > 0.05 * cfg.scale)
    hyper = build_hyper(build_curve(cfg, params_from_r0(cfg, R0).params))
    assume(hyper.genus == 1)
    assert abs(recover_r0(hyper) - R0) < 1e-7 * (1 + abs(R0))
