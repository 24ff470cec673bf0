"""Order-zero symbol calculus on the cosphere bundle of the boundary.

The symbol of the singular Cauchy integral is proportional to
adjoint_symbol(xi/|xi|) . boundary_symbol(nu_c(z)); a single global scalar
kappa reconciles the stated proportionality with the symbol convention.
kappa is recomputed at run time from two constraints: the squared symbol of
the projection must be idempotent, and on the circle the positive-frequency
side must carry the value +1/2 (the classical Riesz projection).  Under the
adopted convention this yields kappa = 2i.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .clifford import DiracOperator, adjoint_symbol, boundary_symbol, build_dirac
from .geometry import BoundaryGrid
from .boundary_ops import BoundaryOperator, Density

__all__ = [
    "CosphereSample",
    "cosphere_samples",
    "cauchy_symbol",
    "calibrate_kappa",
    "pv_integral_check",
    "projection_symbol",
    "toeplitz_ext_symbol",
    "ellipticity_scan",
    "EllipticityReport",
    "numeric_symbol_extraction",
    "numeric_symbol_extraction_hopf",
]


@dataclass(frozen=True)
class CosphereSample:
    """Boundary point with a unit cotangent direction.

    ``z`` is a point of R^{2n} on the boundary, ``nu`` the unit outward
    normal there and ``xi`` a unit covector orthogonal to ``nu``.
    """

    z: np.ndarray
    nu: np.ndarray
    xi: np.ndarray

    def __post_init__(self):
        nu = np.asarray(self.nu, float)
        xi = np.asarray(self.xi, float)
        if abs(np.linalg.norm(xi) - 1.0) > 1e-12:
            raise ValueError("cotangent direction must be unit length")
        if abs(float(nu @ xi)) > 1e-12:
            raise ValueError("cotangent direction must be orthogonal to the normal")
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "z", np.asarray(self.z, float))

    def flip(self) -> "CosphereSample":
        return CosphereSample(self.z, self.nu, -self.xi)


def cosphere_samples(grid: BoundaryGrid, per_node: int = 2,
                     node_stride: int = 1, seed: int = 0) -> list:
    """Cosphere samples over grid nodes.

    On a circle the two tangent directions per node are used; on the
    3-sphere ``per_node`` random unit tangents per selected node (seeded).
    """
    samples = []
    if grid.kind == "circle":
        theta = grid.params["theta"]
        for i in range(0, grid.size, node_stride):
            t = np.array([-np.sin(theta[i]), np.cos(theta[i])])
            nu = grid.normals[i]
            samples.append(CosphereSample(grid.nodes[i], nu, t))
            samples.append(CosphereSample(grid.nodes[i], nu, -t))
        return samples
    rng = np.random.default_rng(seed)
    dim = grid.nodes.shape[1]
    for i in range(0, grid.size, node_stride):
        nu = grid.normals[i]
        for _ in range(per_node):
            v = rng.standard_normal(dim)
            v -= (v @ nu) * nu
            v /= np.linalg.norm(v)
            samples.append(CosphereSample(grid.nodes[i], nu, v))
    return samples


def _nu_complex(nu: np.ndarray) -> np.ndarray:
    n = nu.shape[0] // 2
    return nu[:n] + 1j * nu[n:]


def cauchy_symbol(op: DiracOperator, sample: CosphereSample, kappa: complex) -> np.ndarray:
    """Order-zero symbol of the singular Cauchy integral at a cosphere sample."""
    xi = sample.xi / np.linalg.norm(sample.xi)
    return kappa * adjoint_symbol(op, xi) @ boundary_symbol(op, _nu_complex(sample.nu))


def calibrate_kappa(op: DiracOperator | None = None) -> complex:
    """Solve for the global symbol scalar from the one-variable reference.

    Requires (kappa * s)^2 = E/4 where s is the raw symbol product at the
    reference sample, with the sign pinned so the positive-frequency side of
    the circle carries +1/2.  Raises if no scalar satisfies both.
    """
    ref = build_dirac(1)
    sample = CosphereSample(z=np.array([1.0, 0.0]), nu=np.array([1.0, 0.0]),
                            xi=np.array([0.0, 1.0]))
    s = adjoint_symbol(ref, sample.xi) @ boundary_symbol(ref, np.array([1.0 + 0j]))
    s2 = (s @ s)[0, 0]
    if abs(s2) < 1e-300:
        raise ArithmeticError("degenerate symbol product; convention bug")
    kappa2 = 0.25 / s2
    kappa = np.sqrt(complex(kappa2))
    for cand in (kappa, -kappa):
        val = cand * s[0, 0]
        if abs(val - 0.5) < 1e-10:
            if op is not None:
                _validate_kappa(op, cand)
            return complex(cand.real + 0.0, cand.imag + 0.0)
    raise ArithmeticError(
        "no scalar makes the projection symbol idempotent with the "
        "positive-frequency value +1/2; symbol convention is inconsistent")


def _validate_kappa(op: DiracOperator, kappa: complex, trials: int = 20,
                    seed: int = 7, tol: float = 1e-10):
    rng = np.random.default_rng(seed)
    dim = 2 * op.n
    for _ in range(trials):
        nu = rng.standard_normal(dim)
        nu /= np.linalg.norm(nu)
        v = rng.standard_normal(dim)
        v -= (v @ nu) * nu
        v /= np.linalg.norm(v)
        sample = CosphereSample(z=nu, nu=nu, xi=v)
        p = projection_symbol(op, sample, kappa)
        if np.abs(p @ p - p).max() > tol:
            raise ArithmeticError("calibrated scalar fails idempotency off n=1")


def pv_integral_check(xi_norm: float) -> float:
    """Residual of the normalization integral (1/4pi) int dt/(t^2+|xi|^2) = 1/(4|xi|).

    The window [-T, T] is integrated numerically and the tails are summed
    with the closed-form arctan correction.
    """
    if xi_norm <= 0:
        raise ValueError("|xi| must be positive")
    T = 200.0 * xi_norm
    window, _ = quad(lambda t: 1.0 / (t * t + xi_norm * xi_norm), -T, T,
                     limit=400, epsabs=1e-13, epsrel=1e-12)
    tails = 2.0 * (np.pi / 2 - np.arctan(T / xi_norm)) / xi_norm
    value = (window + tails) / (4 * np.pi)
    return abs(value - 0.25 / xi_norm)


def projection_symbol(op: DiracOperator, sample: CosphereSample,
                      kappa: complex) -> np.ndarray:
    """sigma(Pi) = E/2 + sigma(C); idempotent after calibration."""
    return 0.5 * np.eye(op.k) + cauchy_symbol(op, sample, kappa)


def toeplitz_ext_symbol(op: DiracOperator, multiplier_symbol, sample: CosphereSample,
                        kappa: complex) -> np.ndarray:
    """Symbol P M P + (E - P) of the extended Toeplitz operator.

    ``multiplier_symbol`` is a callable z -> (k x k) matrix (order-zero
    multipliers do not depend on the covector) or a constant matrix.
    """
    P = projection_symbol(op, sample, kappa)
    M = multiplier_symbol(sample.z) if callable(multiplier_symbol) else multiplier_symbol
    M = np.asarray(M, dtype=complex)
    if M.ndim == 0:
        M = M * np.eye(op.k)
    return P @ M @ P + (np.eye(op.k) - P)


@dataclass
class EllipticityReport:
    min_singular_value: float
    witness: CosphereSample
    elliptic: bool
    tolerance: float

    def to_json_dict(self) -> dict:
        return {
            "min_sv": self.min_singular_value,
            "witness": {"z": self.witness.z.tolist(), "xi": self.witness.xi.tolist()},
            "elliptic": bool(self.elliptic),
        }


def ellipticity_scan(op: DiracOperator, multiplier_symbol, samples,
                     kappa: complex, tol: float = 1e-8) -> EllipticityReport:
    """Minimum singular value of the extended-operator symbol over samples.

    The operator is Fredholm iff the symbol is invertible everywhere;
    below ``tol`` the verdict is numerically non-elliptic.
    """
    if not samples:
        raise ValueError("need a nonempty sample set")
    best, witness = np.inf, None
    for sample in samples:
        sym = toeplitz_ext_symbol(op, multiplier_symbol, sample, kappa)
        sv = np.linalg.svd(sym, compute_uv=False)[-1]
        if sv < best:
            best, witness = float(sv), sample
    return EllipticityReport(best, witness, best > tol, tol)


def numeric_symbol_extraction(cauchy: BoundaryOperator, node_index: int,
                              xi, omega: float, v=None) -> np.ndarray:
    """Probe the discrete operator with a localized oscillating density.

    Applies the assembled operator to u(zeta) = chi(zeta) e^{i omega <zeta, xi>} v
    and returns (C u)(z) / e^{i omega <z, xi>}, which tends to the order-zero
    symbol applied to v with error O(1/omega).  The smooth window chi equals
    one at the target node and vanishes where the probe phase is stationary;
    without it the stationary points on the far side of the curve contaminate
    the limit at order omega^{-1/2}.  The oscillation must be resolved:
    omega * spacing <= 1/4.
    """
    grid = cauchy.grid
    if omega * grid.spacing() > 0.25 + 1e-12:
        raise ValueError(
            f"oscillation under-resolved: omega * h = {omega * grid.spacing():.3f} > 1/4")
    xi = np.asarray(xi, float)
    if v is None:
        v = np.zeros(cauchy.k)
        v[0] = 1.0
    v = np.asarray(v, dtype=complex)
    phase = np.exp(1j * omega * (grid.nodes @ xi))
    if grid.kind == "circle":
        dist = grid.params["theta"] - grid.params["theta"][node_index]
        dist = np.angle(np.exp(1j * dist))
        chi = np.where(np.abs(dist) < np.pi / 2, np.cos(dist) ** 2, 0.0)
    else:
        chi = np.ones(grid.size)
    u = Density(grid, (chi * phase)[:, None] * v[None, :])
    out = cauchy.apply(u).values[node_index]
    return out / phase[node_index]


def numeric_symbol_extraction_hopf(op: DiracOperator, hopf_cauchy, eta_index: int,
                                   mode: tuple, v=None):
    """Torus-mode symbol probe on the 3-sphere.

    Applies the operator to u = e^{i(m1 theta1 + m2 theta2)} v through the
    momentum-block fast path and evaluates at the Hopf node (eta_a, 0, 0).
    The probe phase has a nowhere-vanishing surface differential, so no
    localization window is needed; the local unit covector is the
    normalized phase gradient at the node.  Returns (measured, sample)
    where ``sample`` carries the covector for comparison with the
    calibrated symbol.  The angular oscillation must be resolved:
    2 pi max|m| / n_theta <= 1/4.
    """
    grid = hopf_cauchy.grid
    m1, m2 = mode
    n_t = min(grid.params["n_theta1"], grid.params["n_theta2"])
    if 2 * np.pi * max(abs(m1), abs(m2)) / n_t > 0.25 + 1e-12:
        raise ValueError("torus mode under-resolved by the angular grid")
    eta = grid.params["eta"][eta_index]
    ce, se = np.cos(eta), np.sin(eta)
    z = np.array([ce, se, 0.0, 0.0])
    # surface gradient of m1 theta1 + m2 theta2 at (eta, 0, 0)
    grad = np.array([0.0, 0.0, m1 / ce if m1 else 0.0, m2 / se if m2 else 0.0])
    xi = grad / np.linalg.norm(grad)
    sample = CosphereSample(z=z, nu=z.copy(), xi=xi)
    if v is None:
        kappa = calibrate_kappa()
        sym = cauchy_symbol(op, sample, kappa)
        w, V = np.linalg.eig(sym)
        v = V[:, int(np.argmin(np.abs(w - 0.5)))]
    v = np.asarray(v, dtype=complex)
    profile = np.tile(v, (grid.params["n_eta"], 1))
    out = hopf_cauchy.apply_torus_mode(profile, mode)
    return out[eta_index], sample
