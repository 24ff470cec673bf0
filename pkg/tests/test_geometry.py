import numpy as np
import pytest

from diracop.geometry import (
    check_form_pullback,
    make_circle_grid,
    make_disc_grid,
    make_s3_grid,
)


def test_circle_grid_rejects_bad_counts():
    for bad in (2, 5, 7):
        with pytest.raises(ValueError):
            make_circle_grid(bad)


def test_circle_grid_small_case():
    g = make_circle_grid(4)
    np.testing.assert_allclose(g.params["theta"], [0, np.pi / 2, np.pi, 3 * np.pi / 2])
    np.testing.assert_allclose(g.weights, np.pi / 2)


def test_circle_area_and_moment():
    g = make_circle_grid(64)
    assert abs(g.weights.sum() - 2 * np.pi) < 1e-13
    moment = (g.weights * np.exp(1j * g.params["theta"])).sum()
    assert abs(moment) < 1e-14


def test_circle_trapezoid_exactness_on_modes():
    g = make_circle_grid(64)
    theta = g.params["theta"]
    for k in range(1, 32):
        val = (g.weights * np.exp(1j * k * theta)).sum()
        assert abs(val) < 1e-13


def test_grid_invariants_circle():
    g = make_circle_grid(32, radius=2.0, center=[1.0, -0.5])
    assert np.abs(np.linalg.norm(g.normals, axis=1) - 1).max() < 1e-13
    outward = ((g.nodes - g.domain.center) * g.normals).sum(axis=1)
    assert (outward > 0).all()
    assert abs(g.weights.sum() - 4 * np.pi) < 1e-12


def test_s3_grid_rejects_small_counts():
    with pytest.raises(ValueError):
        make_s3_grid(2, 8, 8)


def test_s3_area():
    g = make_s3_grid(16, 16, 16)
    assert abs(g.weights.sum() - 2 * np.pi ** 2) < 1e-10


def test_s3_area_monte_carlo_cross_check():
    # independent oracle: area(S^3_R) = 2 pi^2 R^3 via MC on the defining map
    rng = np.random.default_rng(42)
    pts = rng.standard_normal((200_000, 4))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    # sanity of the sampler itself: mean of x_1^2 over the sphere is 1/4
    mc = (pts[:, 0] ** 2).mean()
    g = make_s3_grid(12, 12, 12)
    quad = (g.weights * g.nodes[:, 0] ** 2).sum() / g.weights.sum()
    assert abs(mc - quad) < 5e-3
    assert abs(quad - 0.25) < 1e-10


def test_s3_normals_and_odd_moment():
    g = make_s3_grid(8, 8, 8)
    assert np.abs(np.linalg.norm(g.normals, axis=1) - 1).max() < 1e-13
    np.testing.assert_allclose(g.normals, g.nodes / g.domain.radius, atol=1e-13)
    moment = (g.weights * g.complex_normals[:, 0]).sum()
    assert abs(moment) < 1e-10


def test_disc_grid_integrals():
    vol = make_disc_grid(24, 24)
    one = vol.weights.sum()
    assert abs(one - np.pi) < 1e-12
    z = vol.nodes_complex()
    assert abs((vol.weights * z).sum()) < 1e-12
    assert abs((vol.weights * np.abs(z) ** 2).sum() - np.pi / 2) < 1e-10


def test_form_pullback_constant():
    g = make_circle_grid(64)
    for m in (0, 1):
        res = check_form_pullback(g, m, lambda x: 1.0, lambda x: (0.0, 0.0),
                                  expected=0.0)
        assert res < 1e-13


def test_form_pullback_divergence_theorem_disc():
    g = make_circle_grid(128)
    vol = make_disc_grid(32, 32)
    res = check_form_pullback(g, 0, lambda x: x[0], lambda x: (1.0, 0.0),
                              volume=vol)
    assert res < 1e-12
    # the surface integral itself equals the disc area
    surf = (g.weights * g.nodes[:, 0] * g.normals[:, 0]).sum()
    assert abs(surf - np.pi) < 1e-12


def test_form_pullback_four_ball():
    g = make_s3_grid(16, 12, 12)
    res = check_form_pullback(g, 0, lambda x: x[0], None,
                              expected=np.pi ** 2 / 2)
    assert res < 1e-8


def test_area_error_shrinks_under_refinement():
    # integrand with genuine quadrature error so the trend is visible
    errs = []
    for ne in (4, 6, 8):
        g = make_s3_grid(ne, ne, ne)
        val = (g.weights * np.exp(g.nodes[:, 0])).sum()
        errs.append(val)
    diffs = [abs(e - errs[-1]) for e in errs[:-1]]
    assert diffs[1] < diffs[0]
    # area itself is exact up to the floating floor on every grid
    for ne in (8, 12, 16):
        g = make_s3_grid(ne, ne, ne)
        assert abs(g.weights.sum() - 2 * np.pi ** 2) < 5e-11


def test_disc_grid_rejects_small_counts():
    with pytest.raises(ValueError):
        make_disc_grid(2, 8)
