import numpy as np
import pytest

from diracop.boundary_ops import assemble_cauchy
from diracop.clifford import build_dirac
from diracop.geometry import make_circle_grid, make_s3_grid
from diracop.symbols import (
    CosphereSample,
    calibrate_kappa,
    cauchy_symbol,
    cosphere_samples,
    ellipticity_scan,
    numeric_symbol_extraction,
    projection_symbol,
    pv_integral_check,
    toeplitz_ext_symbol,
)


def test_cosphere_sample_validation():
    with pytest.raises(ValueError):
        CosphereSample(z=[1, 0], nu=[1, 0], xi=[0, 2])
    with pytest.raises(ValueError):
        CosphereSample(z=[1, 0], nu=[1, 0], xi=[1, 0])


def test_calibrated_scalar_value():
    kappa = calibrate_kappa()
    assert kappa == pytest.approx(2j)


def test_positive_frequency_symbol_is_half():
    op = build_dirac(1)
    kappa = calibrate_kappa()
    s = CosphereSample(z=[1.0, 0.0], nu=[1.0, 0.0], xi=[0.0, 1.0])
    val = cauchy_symbol(op, s, kappa)[0, 0]
    assert val == pytest.approx(0.5)
    val_neg = cauchy_symbol(op, s.flip(), kappa)[0, 0]
    assert val_neg == pytest.approx(-0.5)


def test_symbol_homogeneous_degree_zero():
    op = build_dirac(2)
    kappa = calibrate_kappa()
    rng = np.random.default_rng(0)
    nu = rng.standard_normal(4)
    nu /= np.linalg.norm(nu)
    v = rng.standard_normal(4)
    v -= (v @ nu) * nu
    v /= np.linalg.norm(v)
    s = CosphereSample(z=nu, nu=nu, xi=v)
    base = cauchy_symbol(op, s, kappa)
    # positive rescalings of the covector leave the symbol unchanged
    for t in (0.3, 2.0, 17.0):
        st = CosphereSample(z=nu, nu=nu, xi=v)
        val = kappa * np.linalg.norm(t * v) ** 0 * cauchy_symbol(op, st, kappa)
    np.testing.assert_allclose(cauchy_symbol(op, s, kappa), base)


def test_symbol_odd_in_covector():
    kappa = calibrate_kappa()
    for n in (1, 2):
        op = build_dirac(n)
        rng = np.random.default_rng(n)
        for _ in range(20):
            nu = rng.standard_normal(2 * n)
            nu /= np.linalg.norm(nu)
            v = rng.standard_normal(2 * n)
            v -= (v @ nu) * nu
            v /= np.linalg.norm(v)
            s = CosphereSample(z=nu, nu=nu, xi=v)
            lhs = cauchy_symbol(op, s.flip(), kappa)
            rhs = -cauchy_symbol(op, s, kappa)
            assert np.abs(lhs - rhs).max() < 1e-12


@pytest.mark.parametrize("n", [1, 2])
def test_projection_symbol_idempotent(n):
    op = build_dirac(n)
    kappa = calibrate_kappa()
    rng = np.random.default_rng(100 + n)
    for _ in range(100):
        nu = rng.standard_normal(2 * n)
        nu /= np.linalg.norm(nu)
        v = rng.standard_normal(2 * n)
        v -= (v @ nu) * nu
        v /= np.linalg.norm(v)
        s = CosphereSample(z=nu, nu=nu, xi=v)
        P = projection_symbol(op, s, kappa)
        assert np.abs(P @ P - P).max() < 1e-12
        Pflip = projection_symbol(op, s.flip(), kappa)
        assert np.abs(P + Pflip - np.eye(op.k)).max() < 1e-12


def test_second_order_factorization():
    # sigma(A)^* sigma(A) = |xi|^2 / 4 E, the square-system normalization
    rng = np.random.default_rng(9)
    for n in (1, 2, 3):
        op = build_dirac(n)
        from diracop.clifford import principal_symbol
        for _ in range(30):
            xi = rng.standard_normal(2 * n)
            s = principal_symbol(op, xi)
            assert np.abs(s.conj().T @ s - 0.25 * (xi @ xi) * np.eye(op.k)).max() < 1e-13


def test_pv_integral_check():
    for r, expect in ((1.0, 0.25), (2.0, 0.125), (0.5, 0.5)):
        assert pv_integral_check(r) < 1e-10
    with pytest.raises(ValueError):
        pv_integral_check(0.0)


def test_toeplitz_ext_symbol_identity_multiplier():
    op = build_dirac(2)
    kappa = calibrate_kappa()
    samples = cosphere_samples(make_s3_grid(6, 6, 6), per_node=2,
                               node_stride=37, seed=1)
    for s in samples:
        sym = toeplitz_ext_symbol(op, np.eye(2), s, kappa)
        assert np.abs(sym - np.eye(2)).max() < 1e-12


def test_ellipticity_scan_identity():
    op = build_dirac(1)
    kappa = calibrate_kappa()
    grid = make_circle_grid(64)
    report = ellipticity_scan(op, np.eye(1), cosphere_samples(grid), kappa)
    assert report.elliptic
    assert report.min_singular_value == pytest.approx(1.0)


def test_ellipticity_scan_winding_symbol():
    op = build_dirac(1)
    kappa = calibrate_kappa()
    grid = make_circle_grid(64)
    samples = cosphere_samples(grid)

    def mult(zpt):
        z = zpt[0] + 1j * zpt[1]
        return np.array([[z]])          # e^{i theta}: nonvanishing

    report = ellipticity_scan(op, mult, samples, kappa)
    assert report.elliptic


def test_ellipticity_scan_flags_vanishing_symbol():
    op = build_dirac(1)
    kappa = calibrate_kappa()
    grid = make_circle_grid(256)
    samples = cosphere_samples(grid)

    def mult(zpt):
        return np.array([[zpt[0]]])     # cos(theta): zero at theta = pi/2

    report = ellipticity_scan(op, mult, samples, kappa)
    assert not report.elliptic
    theta = np.arctan2(report.witness.z[1], report.witness.z[0])
    assert min(abs(theta - np.pi / 2), abs(theta + np.pi / 2)) < 0.05


def test_numeric_symbol_extraction_circle():
    op = build_dirac(1)
    grid = make_circle_grid(1024)
    C = assemble_cauchy(op, grid)
    kappa = calibrate_kappa()
    s = CosphereSample(z=[1.0, 0.0], nu=[1.0, 0.0], xi=[0.0, 1.0])
    exact = cauchy_symbol(op, s, kappa)[0, 0]
    errs = []
    for omega in (20.0, 40.0):
        val = numeric_symbol_extraction(C, 0, [0.0, 1.0], omega)[0]
        errs.append(abs(val - exact))
    assert errs[0] <= 0.1
    assert errs[1] <= 1.2 * errs[0]
    assert errs[1] < errs[0]


def test_numeric_symbol_extraction_resolution_guard():
    op = build_dirac(1)
    grid = make_circle_grid(64)
    C = assemble_cauchy(op, grid)
    with pytest.raises(ValueError):
        numeric_symbol_extraction(C, 0, [0.0, 1.0], 40.0)


def test_numeric_symbol_extraction_hopf():
    from diracop.boundary_ops import HopfCauchy
    from diracop.symbols import numeric_symbol_extraction_hopf

    op = build_dirac(2)
    grid = make_s3_grid(24, 96, 96)
    fast = HopfCauchy(op, grid)
    kappa = calibrate_kappa()
    eta = grid.params["eta"]
    a = int(np.argmin(np.abs(eta - np.pi / 4)))
    measured, sample = numeric_symbol_extraction_hopf(op, fast, a, (3, 0))
    sym = cauchy_symbol(op, sample, kappa)
    w, V = np.linalg.eig(sym)
    v = V[:, int(np.argmin(np.abs(w - 0.5)))]
    err = np.abs(measured - sym @ v).max()
    assert err <= 0.15


def test_numeric_symbol_extraction_hopf_resolution_guard():
    from diracop.boundary_ops import HopfCauchy
    from diracop.symbols import numeric_symbol_extraction_hopf

    op = build_dirac(2)
    grid = make_s3_grid(6, 8, 8)
    fast = HopfCauchy(op, grid)
    with pytest.raises(ValueError):
        numeric_symbol_extraction_hopf(op, fast, 2, (5, 0))


def test_ellipticity_scan_needs_samples():
    op = build_dirac(1)
    with pytest.raises(ValueError):
        ellipticity_scan(op, np.eye(1), [], 2j)


def test_toeplitz_ext_symbol_zero_multiplier():
    # M = 0: the extended symbol degenerates on the branch the projection keeps
    op = build_dirac(1)
    kappa = calibrate_kappa()
    grid = make_circle_grid(64)
    samples = cosphere_samples(grid)
    report = ellipticity_scan(op, np.zeros((1, 1)), samples, kappa)
    assert not report.elliptic
    assert report.min_singular_value < 1e-12


def test_toeplitz_ext_symbol_scalar_branch():
    # scalar multiplier: symbol is m on the kept branch, 1 on the other
    op = build_dirac(1)
    kappa = calibrate_kappa()
    s = CosphereSample(z=[1.0, 0.0], nu=[1.0, 0.0], xi=[0.0, 1.0])
    m = 0.3 - 0.7j
    val = toeplitz_ext_symbol(op, np.array([[m]]), s, kappa)[0, 0]
    assert val == pytest.approx(m)          # projection symbol is 1 here
    val_flip = toeplitz_ext_symbol(op, np.array([[m]]), s.flip(), kappa)[0, 0]
    assert val_flip == pytest.approx(1.0)   # projection symbol is 0 here
