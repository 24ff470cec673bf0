import numpy as np
import pytest

from diracop.clifford import (
    DiracOperator,
    adjoint_symbol,
    apply_to_polynomial,
    boundary_symbol,
    build_dirac,
    check_identities,
    polynomial_solutions,
    principal_symbol,
)


def test_build_rejects_bad_dimension():
    for n in (0, -1):
        with pytest.raises(ValueError):
            build_dirac(n)


def test_cauchy_riemann_base_case():
    op = build_dirac(1)
    assert op.k == 1
    assert op.alpha[0][0, 0] == 0
    assert op.beta[0][0, 0] == 1


def test_two_variable_coefficients_match_known_family():
    op = build_dirac(2)
    assert op.k == 2
    np.testing.assert_array_equal(op.alpha[0], np.array([[0, 0], [0, 1]]))
    np.testing.assert_array_equal(op.alpha[1], np.array([[0, 0], [1, 0]]))
    np.testing.assert_array_equal(op.beta[0], np.array([[1, 0], [0, 0]]))
    np.testing.assert_array_equal(op.beta[1], np.array([[0, -1], [0, 0]]))


@pytest.mark.parametrize("n", range(1, 6))
def test_identities_exact(n):
    report = check_identities(build_dirac(n))
    assert report.max_residual == 0.0
    assert report.violations == []


def test_identities_detect_violation():
    op = build_dirac(2)
    bad = DiracOperator(n=2, k=2, alpha=op.alpha,
                        beta=(2 * np.eye(2, dtype=complex), op.beta[1]))
    report = check_identities(bad)
    assert report.max_residual > 0
    assert any(j == 1 and k == 1 for (_, j, k, _r) in report.violations)


def test_cauchy_riemann_symbol_value():
    op = build_dirac(1)
    val = principal_symbol(op, [1.0, 0.0])
    assert val.shape == (1, 1)
    assert val[0, 0] == pytest.approx(-0.5)
    # -(xi_1 + i xi_2)/2 at a generic covector
    v = principal_symbol(op, [0.3, -1.2])[0, 0]
    assert v == pytest.approx(-0.5 * (0.3 - 1.2j))


def test_symbol_zero_covector():
    op = build_dirac(3)
    assert np.all(principal_symbol(op, np.zeros(6)) == 0)
    assert np.all(adjoint_symbol(op, np.zeros(6)) == 0)


def test_symbol_wrong_length_rejected():
    with pytest.raises(ValueError):
        principal_symbol(build_dirac(2), [1.0, 0.0])


@pytest.mark.parametrize("n", range(1, 5))
def test_symbol_factorization(n):
    op = build_dirac(n)
    rng = np.random.default_rng(11 + n)
    for _ in range(100):
        xi = rng.standard_normal(2 * n)
        s = principal_symbol(op, xi)
        target = 0.25 * (xi @ xi) * np.eye(op.k)
        assert np.abs(s.conj().T @ s - target).max() < 1e-12
        assert np.abs(s @ s.conj().T - target).max() < 1e-12


def test_symbol_real_linearity():
    op = build_dirac(2)
    rng = np.random.default_rng(5)
    xi, eta = rng.standard_normal(4), rng.standard_normal(4)
    a, b = 0.7, -2.3
    lhs = principal_symbol(op, a * xi + b * eta)
    rhs = a * principal_symbol(op, xi) + b * principal_symbol(op, eta)
    assert np.abs(lhs - rhs).max() < 1e-13


def test_adjoint_symbol_is_negated_conjugate_transpose():
    rng = np.random.default_rng(2)
    for n in (1, 2, 3):
        op = build_dirac(n)
        for _ in range(10):
            xi = rng.standard_normal(2 * n)
            lhs = adjoint_symbol(op, xi)
            rhs = -principal_symbol(op, xi).conj().T
            assert np.abs(lhs - rhs).max() < 1e-14


def test_boundary_symbol_values():
    op1 = build_dirac(1)
    for theta in (0.0, 0.4, 2.0):
        s = boundary_symbol(op1, [np.exp(1j * theta)])
        assert s[0, 0] == pytest.approx(np.exp(1j * theta) / 2)
    op2 = build_dirac(2)
    s = boundary_symbol(op2, [1.0, 0.0])
    np.testing.assert_allclose(s, 0.5 * np.eye(2))


def test_boundary_symbol_isometry_scaling():
    rng = np.random.default_rng(8)
    for n in (1, 2, 3):
        op = build_dirac(n)
        for _ in range(20):
            v = rng.standard_normal(2 * n)
            v /= np.linalg.norm(v)
            nu_c = v[:n] + 1j * v[n:]
            s = boundary_symbol(op, nu_c)
            assert np.abs(s.conj().T @ s - 0.25 * np.eye(op.k)).max() < 1e-13


def test_boundary_symbol_requires_unit_normal():
    with pytest.raises(ValueError):
        boundary_symbol(build_dirac(1), [2.0])


def test_polynomial_solutions_one_variable():
    op = build_dirac(1)
    basis = polynomial_solutions(op, 2)
    # holomorphic monomials 1, z, z^2
    assert len(basis.elements) == 3
    pts = np.array([[0.3 + 0.2j], [1.0 - 1.0j], [-0.5j]])
    vals = np.stack([p.evaluate(pts)[:, 0] for p in basis.elements])
    # the span contains z^2: solve for coefficients in the basis
    target = (pts[:, 0] ** 2)
    coef, res, *_ = np.linalg.lstsq(vals.T, target, rcond=None)
    assert np.abs(vals.T @ coef - target).max() < 1e-12


def test_polynomial_solutions_degree_zero():
    for n in (1, 2, 3):
        op = build_dirac(n)
        basis = polynomial_solutions(op, 0)
        assert len(basis.elements) == op.k


def test_polynomial_solutions_two_variables_contains_known():
    op = build_dirac(2)
    basis = polynomial_solutions(op, 1)
    pts = np.array([[0.1 + 0.2j, -0.3 + 0.4j],
                    [1.0, 0.5j],
                    [-0.2 - 0.2j, 0.7],
                    [0.9j, -0.1 + 0.6j]])
    span = np.stack([p.evaluate(pts).reshape(-1) for p in basis.elements])
    for target_fun in (lambda z: np.stack([z[:, 0], 0 * z[:, 0]], axis=-1),
                       lambda z: np.stack([np.conj(z[:, 1]), 0 * z[:, 0]], axis=-1)):
        target = target_fun(pts).reshape(-1)
        coef, *_ = np.linalg.lstsq(span.T, target, rcond=None)
        assert np.abs(span.T @ coef - target).max() < 1e-10


@pytest.mark.parametrize("n,deg", [(1, 3), (2, 2), (3, 1)])
def test_polynomial_solutions_are_annihilated(n, deg):
    op = build_dirac(n)
    basis = polynomial_solutions(op, deg)
    assert basis.elements, "null space should not be empty"
    for p in basis.elements:
        image = apply_to_polynomial(op, p)
        resid = image.max_coeff()
        assert resid <= 1e-12 * max(p.max_coeff(), 1.0)


def test_json_round_trip():
    op = build_dirac(3)
    clone = DiracOperator.from_json(op.to_json())
    assert clone.n == op.n and clone.k == op.k
    for a, b in zip(clone.alpha, op.alpha):
        np.testing.assert_array_equal(a, b)
    for a, b in zip(clone.beta, op.beta):
        np.testing.assert_array_equal(a, b)
