"""Constant-coefficient Dirac operators on C^n and their symbol calculus.

A Dirac operator is a k x k first-order system

    A = sum_j  alpha_j d/dz_j + beta_j d/dzbar_j

whose coefficients satisfy the anticommutation identities

    alpha_j^* alpha_k + beta_k^* beta_j = delta_{jk} E,
    alpha_j^* beta_k  + alpha_k^* beta_j = 0,

equivalent to A^*A = -(1/4) Laplacian.  ``build_dirac`` produces one such
family of size k = 2^(n-1) by a doubling recursion starting from d/dzbar.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
import sympy

__all__ = [
    "DiracOperator",
    "IdentityReport",
    "PolySolution",
    "PolySolutionBasis",
    "build_dirac",
    "check_identities",
    "principal_symbol",
    "adjoint_symbol",
    "boundary_symbol",
    "polynomial_solutions",
    "apply_to_polynomial",
]


@dataclass(frozen=True)
class DiracOperator:
    """Coefficient matrices of a first-order system factorizing the Laplacian.

    ``alpha[j]``, ``beta[j]`` are complex (k x k) arrays multiplying
    d/dz_{j+1} and d/dzbar_{j+1}.  Instances are immutable; the arrays are
    marked read-only at construction.
    """

    n: int
    k: int
    alpha: tuple
    beta: tuple

    def __post_init__(self):
        for m in self.alpha + self.beta:
            m.flags.writeable = False

    def to_json(self) -> str:
        def cm(m):
            return [[[float(v.real), float(v.imag)] for v in row] for row in m]

        doc = {
            "n": self.n,
            "k": self.k,
            "alpha": [cm(a) for a in self.alpha],
            "beta": [cm(b) for b in self.beta],
        }
        return json.dumps(doc)

    @staticmethod
    def from_json(text: str) -> "DiracOperator":
        doc = json.loads(text)

        def dm(m):
            return np.array([[complex(re, im) for re, im in row] for row in m])

        return DiracOperator(
            n=doc["n"],
            k=doc["k"],
            alpha=tuple(dm(a) for a in doc["alpha"]),
            beta=tuple(dm(b) for b in doc["beta"]),
        )


def build_dirac(n: int) -> DiracOperator:
    """Construct the doubling family of Dirac coefficient matrices.

    Base case is the Cauchy-Riemann operator (alpha=0, beta=1); each added
    variable doubles the matrix size, so k = 2^(n-1).  All entries are 0 or
    +-1, hence the identity check below is exact in floating point.
    """
    if n < 1:
        raise ValueError(f"dimension must be a positive integer, got {n}")
    alpha = [np.zeros((1, 1), dtype=complex)]
    beta = [np.ones((1, 1), dtype=complex)]
    for _ in range(2, n + 1):
        kk = alpha[0].shape[0]
        zero = np.zeros((kk, kk), dtype=complex)
        eye = np.eye(kk, dtype=complex)
        new_alpha = [np.block([[a, zero], [zero, b.conj().T]]) for a, b in zip(alpha, beta)]
        new_beta = [np.block([[b, zero], [zero, a.conj().T]]) for a, b in zip(alpha, beta)]
        new_alpha.append(np.block([[zero, zero], [eye, zero]]))
        new_beta.append(np.block([[zero, -eye], [zero, zero]]))
        alpha, beta = new_alpha, new_beta
    return DiracOperator(n=n, k=alpha[0].shape[0], alpha=tuple(alpha), beta=tuple(beta))


@dataclass
class IdentityReport:
    """Result of the anticommutation-identity check."""

    max_residual: float
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.max_residual == 0.0


def check_identities(op: DiracOperator) -> IdentityReport:
    """Residuals of the coefficient identities over all index pairs.

    For integer-entried operators the residual is exactly zero.  Violated
    pairs are reported as (family, j, k, residual) with family "aa+bb"
    for the delta identity and "ab+ab" for the mixed one.
    """
    eye = np.eye(op.k)
    worst = 0.0
    violations = []
    for j in range(op.n):
        for k in range(op.n):
            target = eye if j == k else np.zeros((op.k, op.k))
            r1 = np.abs(op.alpha[j].conj().T @ op.alpha[k]
                        + op.beta[k].conj().T @ op.beta[j] - target).max()
            r2 = np.abs(op.alpha[j].conj().T @ op.beta[k]
                        + op.alpha[k].conj().T @ op.beta[j]).max()
            if r1 > 0:
                violations.append(("aa+bb", j + 1, k + 1, float(r1)))
            if r2 > 0:
                violations.append(("ab+ab", j + 1, k + 1, float(r2)))
            worst = max(worst, r1, r2)
    return IdentityReport(max_residual=float(worst), violations=violations)


def _zeta(op: DiracOperator, xi) -> np.ndarray:
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (2 * op.n,):
        raise ValueError(f"covector must have length {2 * op.n}, got shape {xi.shape}")
    return xi[: op.n] + 1j * xi[op.n:]

def _contract(mats_a, mats_b, wa, wb) -> np.ndarray:
    out = np.zeros_like(mats_a[0])
    for j in range(len(mats_a)):
        out = out + mats_a[j] * wa[j] + mats_b[j] * wb[j]
    return out


def principal_symbol(op: DiracOperator, xi) -> np.ndarray:
    """First-order symbol at a real covector xi in R^{2n}.

    Convention: sigma(d/dx_m) = -xi_m, fixed so that the one-variable
    operator d/dzbar has symbol -(xi_1 + i xi_2)/2.  Consequently
    sigma(xi)^* sigma(xi) = |xi|^2/4 E for every real xi.
    """
    z = _zeta(op, xi)
    return -0.5 * _contract(op.alpha, op.beta, np.conj(z), z)


def adjoint_symbol(op: DiracOperator, xi) -> np.ndarray:
    """Symbol of the formal adjoint at xi.

    The formal adjoint is -sum_j (beta_j^* d/dz_j + alpha_j^* d/dzbar_j),
    so under the same convention the value is the negated conjugate
    transpose of ``principal_symbol``.
    """
    z = _zeta(op, xi)
    alphas = [a.conj().T for a in op.alpha]
    betas = [b.conj().T for b in op.beta]
    return 0.5 * _contract(alphas, betas, z, np.conj(z))


def boundary_symbol(op: DiracOperator, nu_c) -> np.ndarray:
    """Symbol contracted with a unit complex normal.

    sigma(zeta) = (1/2) sum_j [alpha_j conj(nu_c_j) + beta_j nu_c_j];
    it satisfies sigma^* sigma = E/4 and is normalized so that the Cauchy
    reproduction identity holds with the kernel module's conventions.
    """
    nu_c = np.asarray(nu_c, dtype=complex)
    if nu_c.shape != (op.n,):
        raise ValueError(f"complex normal must have length {op.n}")
    norm = np.sqrt((np.abs(nu_c) ** 2).sum())
    if abs(norm - 1.0) > 1e-12:
        raise ValueError(f"complex normal must be unit length, |nu_c| = {norm}")
    return 0.5 * _contract(op.alpha, op.beta, np.conj(nu_c), nu_c)


# ---------------------------------------------------------------------------
# polynomial null space
# ---------------------------------------------------------------------------

@dataclass
class PolySolution:
    """C^k-valued polynomial in (z, zbar), stored as a coefficient table.

    ``coeffs`` maps (a, b) -> complex vector of length k, where a and b are
    exponent tuples for z^a zbar^b.
    """

    n: int
    k: int
    coeffs: dict

    def evaluate(self, points) -> np.ndarray:
        """Evaluate at complex points, shape (m, n) -> (m, k)."""
        pts = np.atleast_2d(np.asarray(points, dtype=complex))
        out = np.zeros((pts.shape[0], self.k), dtype=complex)
        for (a, b), vec in self.coeffs.items():
            mono = np.ones(pts.shape[0], dtype=complex)
            for j in range(self.n):
                if a[j]:
                    mono = mono * pts[:, j] ** a[j]
                if b[j]:
                    mono = mono * np.conj(pts[:, j]) ** b[j]
            out += mono[:, None] * vec[None, :]
        return out

    def max_coeff(self) -> float:
        return max((np.abs(v).max() for v in self.coeffs.values()), default=0.0)


@dataclass
class PolySolutionBasis:
    operator: DiracOperator
    degree: int
    elements: list


def _monomials(n: int, degree: int):
    """All exponent pairs (a, b) with |a| + |b| <= degree, in a fixed order."""
    def tuples(total, length):
        if length == 1:
            yield (total,)
            return
        for head in range(total + 1):
            for rest in tuples(total - head, length - 1):
                yield (head,) + rest

    out = []
    for deg in range(degree + 1):
        for asum in range(deg + 1):
            for a in tuples(asum, n):
                for b in tuples(deg - asum, n):
                    out.append((a, b))
    return out


def apply_to_polynomial(op: DiracOperator, poly: PolySolution) -> PolySolution:
    """Apply the operator by exact differentiation of the coefficient table."""
    out: dict = {}

    def add(key, vec):
        if key in out:
            out[key] = out[key] + vec
        else:
            out[key] = vec.copy()

    for (a, b), vec in poly.coeffs.items():
        for j in range(op.n):
            if a[j]:
                key = (a[:j] + (a[j] - 1,) + a[j + 1:], b)
                add(key, a[j] * (op.alpha[j] @ vec))
            if b[j]:
                key = (a, b[:j] + (b[j] - 1,) + b[j + 1:])
                add(key, b[j] * (op.beta[j] @ vec))
    return PolySolution(n=op.n, k=op.k, coeffs=out)


def polynomial_solutions(op: DiracOperator, degree: int) -> PolySolutionBasis:
    """Basis of polynomial solutions of Au = 0 up to the given total degree.

    The null space is computed exactly over the rationals (the built-in
    coefficient matrices are integer), so applying the operator to any basis
    element gives the zero table to machine precision.
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    monos = _monomials(op.n, degree)
    out_monos = _monomials(op.n, max(degree - 1, 0))
    col_index = {(m, p): i for i, (m, p) in
                 enumerate((m, p) for m in monos for p in range(op.k))}
    row_index = {(m, p): i for i, (m, p) in
                 enumerate((m, p) for m in out_monos for p in range(op.k))}

    mat = sympy.zeros(len(row_index), len(col_index))
    for (a, b) in monos:
        for p in range(op.k):
            basis = PolySolution(op.n, op.k, {(a, b): np.eye(op.k)[p]})
            image = apply_to_polynomial(op, basis)
            for key, vec in image.coeffs.items():
                for q in range(op.k):
                    v = complex(vec[q])
                    if v != 0:
                        # Rational(float) is exact, so integer inputs stay exact
                        entry = sympy.Rational(v.real) + sympy.I * sympy.Rational(v.imag)
                        mat[row_index[(key, q)], col_index[((a, b), p)]] += entry

    null = mat.nullspace()
    elements = []
    for vec in null:
        coeffs: dict = {}
        for ((a, b), p), i in col_index.items():
            v = complex(vec[i])
            if v != 0:
                coeffs.setdefault((a, b), np.zeros(op.k, dtype=complex))[p] = v
        elements.append(PolySolution(op.n, op.k, coeffs))
    return PolySolutionBasis(operator=op, degree=degree, elements=elements)
