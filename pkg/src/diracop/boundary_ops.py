"""Discretized singular Cauchy integral, Szego projection and evaluations.

The Nystrom discretization subtracts the density value at the target node,
which is exact on constants because the projection fixes them: the diagonal
block of each row is defined as E/2 minus the off-diagonal row sum.  On a
circle the remaining diagonal limit is a tangential derivative and is added
through a spectral differentiation matrix, making the scheme exact on every
resolvable Fourier mode.  On the 3-sphere no bounded diagonal limit exists;
there the principal value is truncated at a radius proportional to the
angular spacing (pairs closer than the cutoff are folded into the diagonal),
which keeps the operator norm bounded near the coordinate poles of the Hopf
grid.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clifford import DiracOperator
from .geometry import BoundaryGrid, VolumeGrid
from .kernels import KernelContext, coefficient_contraction, phi_many

__all__ = [
    "Density",
    "BoundaryOperator",
    "assemble_cauchy",
    "szego_projection",
    "projection_defect",
    "interior_eval",
    "exterior_vanishing",
    "exact_szego_circle",
    "fourier_cauchy_circle",
    "cauchy_rows",
    "HopfCauchy",
    "circle_mode",
]

# PV truncation radius for surface grids, in units of R * 2*pi / n_theta.
PV_CUTOFF = 0.7


@dataclass
class Density:
    """Samples of a C^k-valued boundary function, shape (M, k)."""

    grid: BoundaryGrid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.ndim == 1:
            self.values = self.values[:, None]
        if self.values.shape[0] != self.grid.size:
            raise ValueError("density length does not match the grid")

    @property
    def k(self) -> int:
        return self.values.shape[1]

    def flat(self) -> np.ndarray:
        return self.values.reshape(-1)

    @staticmethod
    def from_function(grid: BoundaryGrid, f) -> "Density":
        zs = grid.nodes_complex()
        return Density(grid, np.asarray([f(z) for z in zs], dtype=complex))

    def to_json(self) -> str:
        import json
        vals = [[[float(v.real), float(v.imag)] for v in row] for row in self.values]
        return json.dumps({"k": self.k, "values": vals})


@dataclass
class BoundaryOperator:
    """Dense square matrix over the block density space (node-major)."""

    grid: BoundaryGrid
    k: int
    label: str
    matrix: np.ndarray

    def __post_init__(self):
        m = self.grid.size * self.k
        if self.matrix.shape != (m, m):
            raise ValueError(f"matrix must be {m} x {m}, got {self.matrix.shape}")

    def apply(self, u: Density) -> Density:
        if u.grid is not self.grid and u.grid.size != self.grid.size:
            raise ValueError("density lives on a different grid")
        return Density(self.grid, (self.matrix @ u.flat()).reshape(-1, self.k))

    def to_json(self) -> str:
        import json
        flat = [[float(v.real), float(v.imag)] for v in self.matrix.reshape(-1)]
        return json.dumps({"label": self.label, "N": self.grid.size,
                           "k": self.k, "entries": flat})


# ---------------------------------------------------------------------------
# assembly
# ---------------------------------------------------------------------------

def _spectral_diff_matrix(num: int) -> np.ndarray:
    """Periodic differentiation matrix with the Nyquist mode kept at +N/2.

    The asymmetric Nyquist convention matches the discrete Hardy space,
    which keeps all nonnegative grid modes.
    """
    freqs = np.fft.fftfreq(num, 1.0 / num)
    freqs[num // 2] = num // 2
    F = np.fft.fft(np.eye(num), axis=0)
    return np.fft.ifft(1j * freqs[:, None] * F, axis=0)


def cauchy_rows(op: DiracOperator, grid: BoundaryGrid, obs_idx) -> np.ndarray:
    """Weighted kernel blocks w_j K(z_i, zeta_j) for selected target nodes.

    Returns shape (len(obs_idx), M, k, k).  Self pairs and, on surface
    grids, pairs inside the PV cutoff are zeroed; diagonal enforcement is
    done by the callers.
    """
    ctx = KernelContext(op)
    zs = grid.nodes_complex()
    obs_idx = np.asarray(obs_idx, dtype=int)
    d = zs[obs_idx][:, None, :] - zs[None, :, :]
    r2 = (np.abs(d) ** 2).sum(axis=-1)
    if grid.kind == "s3":
        eps = PV_CUTOFF * grid.domain.radius * 2 * np.pi / max(
            grid.params["n_theta1"], grid.params["n_theta2"])
        cut = r2 < eps * eps
    else:
        cut = r2 == 0.0
    r2[cut] = 1.0
    mats = coefficient_contraction(op, d).conj().swapaxes(-1, -2)
    Phi = ctx.constant * mats / r2[..., None, None] ** op.n
    sig = 0.5 * coefficient_contraction(op, grid.complex_normals)
    K = -np.einsum("onab,nbc->onac", Phi, sig)
    K *= grid.weights[None, :, None, None]
    K[cut] = 0.0
    return K


def assemble_cauchy(op: DiracOperator, grid: BoundaryGrid,
                    chunk: int = 512) -> BoundaryOperator:
    """Nystrom matrix of the singular Cauchy integral on the given grid."""
    if (grid.domain.n) != op.n:
        raise ValueError("grid dimension does not match the operator")
    M, k = grid.size, op.k
    blocks = np.empty((M, M, k, k), dtype=complex)
    for start in range(0, M, chunk):
        idx = np.arange(start, min(start + chunk, M))
        blocks[idx] = cauchy_rows(op, grid, idx)

    if grid.kind == "circle":
        # tangential diagonal-limit term: lim K(z,zeta)(u(zeta)-u(z))
        # equals u'(theta)/(2 pi i R), i.e. (-i/N) d/dtheta after weighting
        num = grid.params["num_nodes"]
        D = _spectral_diff_matrix(num)
        blocks += (-1j / num) * D[:, :, None, None] * np.eye(k)[None, None]

    eye = np.eye(k)
    for i in range(M):
        blocks[i, i] = 0.0
        blocks[i, i] = 0.5 * eye - blocks[i].sum(axis=0)
    matrix = blocks.transpose(0, 2, 1, 3).reshape(M * k, M * k)
    return BoundaryOperator(grid, k, "C", matrix)


def szego_projection(cauchy: BoundaryOperator) -> BoundaryOperator:
    """Projection (1/2) I + C onto the discrete Hardy space."""
    m = cauchy.matrix.shape[0]
    return BoundaryOperator(cauchy.grid, cauchy.k, "Pi",
                            0.5 * np.eye(m) + cauchy.matrix)


def projection_defect(cauchy: BoundaryOperator) -> float:
    """Spectral norm of C^2 - I/4, the distance from the projection identity."""
    m = cauchy.matrix.shape[0]
    defect = cauchy.matrix @ cauchy.matrix - 0.25 * np.eye(m)
    return float(np.linalg.norm(defect, 2))


# ---------------------------------------------------------------------------
# interior / exterior evaluation
# ---------------------------------------------------------------------------

def _check_guard(grid: BoundaryGrid, z, want_interior: bool):
    dom = grid.domain
    zc = np.asarray(z, dtype=complex).reshape(-1)
    dist = np.sqrt((np.abs(zc - dom.center_complex()) ** 2).sum())
    margin = 2.0 * grid.spacing()
    if want_interior and dist > dom.radius - margin:
        raise ValueError(
            f"evaluation point must lie at least two spacings inside the "
            f"boundary (|z - c| = {dist:.4f}, R = {dom.radius})")
    if not want_interior and dist < dom.radius + margin:
        raise ValueError(
            f"evaluation point must lie at least two spacings outside the "
            f"boundary (|z - c| = {dist:.4f}, R = {dom.radius})")


def _boundary_sum(op: DiracOperator, grid: BoundaryGrid, u: Density, z) -> np.ndarray:
    """Quadrature of Phi(z - .) sigma(.) u over the boundary."""
    ctx = KernelContext(op)
    zc = np.asarray(z, dtype=complex).reshape(-1)
    d = zc[None, :] - grid.nodes_complex()
    Phi = phi_many(ctx, d)
    sig = 0.5 * coefficient_contraction(op, grid.complex_normals)
    return np.einsum("nab,nbc,nc,n->a", Phi, sig, u.values, grid.weights)


def _disc_interpolate(vol: VolumeGrid, samples: np.ndarray, z: complex) -> complex:
    """Interpolate disc-grid samples at an interior point.

    Trigonometric interpolation in the angle (exact on resolved modes),
    then barycentric Lagrange across the Gauss-Legendre radii.
    """
    r_nodes = vol.params["r"]
    n_r, n_t = vol.params["n_r"], vol.params["n_theta"]
    vals = np.asarray(samples, dtype=complex).reshape(n_r, n_t)
    zrel = z - vol.domain.center_complex()[0]
    r0, t0 = abs(zrel), np.angle(zrel)
    freqs = np.fft.fftfreq(n_t, 1.0 / n_t)
    ring = (np.fft.fft(vals, axis=1) / n_t) @ np.exp(1j * freqs * t0)
    # barycentric weights for the radial nodes
    wts = np.ones(n_r)
    for i in range(n_r):
        wts[i] = 1.0 / np.prod(r_nodes[i] - np.delete(r_nodes, i))
    diff = r0 - r_nodes
    if np.any(diff == 0):
        return complex(ring[np.argmin(np.abs(diff))])
    c = wts / diff
    return complex((c * ring).sum() / c.sum())


def interior_eval(op: DiracOperator, grid: BoundaryGrid, u: Density, z,
                  volume: tuple[VolumeGrid, np.ndarray] | None = None,
                  allow_exterior: bool = False) -> np.ndarray:
    """Reproduce a function inside the domain from its boundary trace.

    Computes -sum_j w_j Phi(z - zeta_j) sigma(zeta_j) u_j, plus, when a
    volume grid with samples of the operator image Au is supplied (one
    complex variable only), the volume correction term.  The volume term
    subtracts the sample interpolated at z and uses the closed form
    (1/pi) int_disc dv / (z - zeta) = conj(z - c) for the remainder, which
    keeps near-singular quadrature error out of the result.
    """
    _check_guard(grid, z, want_interior=not allow_exterior)
    val = -_boundary_sum(op, grid, u, z)
    if volume is not None:
        if op.n != 1:
            raise ValueError("volume correction is implemented for n = 1 only")
        vol, samples = volume
        samples = np.asarray(samples, dtype=complex).reshape(-1)
        zc = complex(np.asarray(z, dtype=complex).reshape(-1)[0])
        gz = _disc_interpolate(vol, samples, zc)
        zeta = vol.nodes_complex()
        dd = zc - zeta
        if np.any(dd == 0):
            raise ZeroDivisionError("evaluation point collides with a volume node")
        quad = ((1 / np.pi) / dd * (samples - gz) * vol.weights).sum()
        cz = vol.domain.center_complex()[0]
        if abs(zc - cz) < vol.domain.radius:
            exact_const = np.conj(zc - cz)
        else:
            exact_const = vol.domain.radius ** 2 / (zc - cz)
        val = val + np.array([quad + gz * exact_const], dtype=complex)
    return val


def exterior_vanishing(op: DiracOperator, grid: BoundaryGrid, u: Density, w) -> float:
    """Norm of the boundary integral at an exterior point.

    Small iff the density is numerically a trace of an interior solution.
    """
    _check_guard(grid, w, want_interior=False)
    return float(np.sqrt((np.abs(_boundary_sum(op, grid, u, w)) ** 2).sum()))


# ---------------------------------------------------------------------------
# circle Fourier oracles
# ---------------------------------------------------------------------------

def _grid_freqs(num: int) -> np.ndarray:
    freqs = np.fft.fftfreq(num, 1.0 / num)
    freqs[num // 2] = num // 2
    return freqs


def circle_mode(grid: BoundaryGrid, k: int) -> Density:
    """Density e^{i k theta} on a circle grid."""
    theta = grid.params["theta"]
    return Density(grid, np.exp(1j * k * theta))


def exact_szego_circle(num_nodes: int, mode_cutoff: int,
                       radius: float = 1.0) -> BoundaryOperator:
    """Ground-truth Szego projection on the circle, built by DFT synthesis.

    Projects onto the nonnegative grid modes (Nyquist counted positive).
    ``mode_cutoff`` documents the band the oracle certifies; node counts
    must over-resolve it (N > 2 M) or the band aliases.
    """
    if num_nodes <= 2 * mode_cutoff:
        raise ValueError(f"need N > 2M to avoid aliasing, got N = {num_nodes}, "
                         f"M = {mode_cutoff}")
    from .geometry import make_circle_grid
    grid = make_circle_grid(num_nodes, radius=radius)
    F = np.fft.fft(np.eye(num_nodes), axis=0)
    keep = (_grid_freqs(num_nodes) >= 0).astype(float)
    P = np.fft.ifft(keep[:, None] * F, axis=0)
    return BoundaryOperator(grid, 1, "Pi_oracle", P)


def fourier_cauchy_circle(num_nodes: int, radius: float = 1.0) -> BoundaryOperator:
    """Fourier-multiplier Cauchy operator: +1/2 on modes >= 0, -1/2 below."""
    from .geometry import make_circle_grid
    grid = make_circle_grid(num_nodes, radius=radius)
    F = np.fft.fft(np.eye(num_nodes), axis=0)
    mult = np.where(_grid_freqs(num_nodes) >= 0, 0.5, -0.5)
    C = np.fft.ifft(mult[:, None] * F, axis=0)
    return BoundaryOperator(grid, 1, "C_oracle", C)


# ---------------------------------------------------------------------------
# Hopf momentum fast path
# ---------------------------------------------------------------------------

class HopfCauchy:
    """Torus-momentum block form of the Cauchy operator on a Hopf grid.

    The kernel is equivariant under the two-torus rotation action up to
    conjugation by diag(e^{i(t-s)/2}, e^{-i(t-s)/2}); after the diagonal
    gauge diag(1, e^{i(theta1 - theta2)}) per node the matrix becomes
    block-circulant in the two angular indices and a 2-D FFT splits it into
    independent blocks of size (n_eta * k).  Spectral quantities of the full
    matrix equal the worst case over blocks (the gauge is unitary).
    """

    def __init__(self, op: DiracOperator, grid: BoundaryGrid):
        if grid.kind != "s3":
            raise ValueError("momentum blocks require a Hopf grid")
        self.op = op
        self.grid = grid
        ne = grid.params["n_eta"]
        n1 = grid.params["n_theta1"]
        n2 = grid.params["n_theta2"]
        self.shape = (ne, n1, n2)
        ref_idx = np.arange(ne) * n1 * n2      # nodes at theta1 = theta2 = 0
        table = cauchy_rows(op, grid, ref_idx)
        eye = np.eye(op.k)
        for a in range(ne):
            table[a, ref_idx[a]] = 0.0
            table[a, ref_idx[a]] = 0.5 * eye - table[a].sum(axis=0)
        table = table.reshape(ne, ne, n1, n2, op.k, op.k)
        t1 = 2 * np.pi * np.arange(n1) / n1
        t2 = 2 * np.pi * np.arange(n2) / n2
        gauge = np.exp(1j * (t1[:, None] - t2[None, :]))
        table[..., 1] *= gauge[None, None, :, :, None]
        self._table = table

    def momentum_block(self, kb: int, kc: int) -> np.ndarray:
        """Single block, a (n_eta * k) square matrix at torus momentum (kb, kc).

        Sign convention: this block gives the action of the gauged operator
        on densities proportional to e^{+i(kb theta1 + kc theta2)}.
        """
        ne, n1, n2 = self.shape
        ph1 = np.exp(2j * np.pi * kb * np.arange(n1) / n1)
        ph2 = np.exp(2j * np.pi * kc * np.arange(n2) / n2)
        blk = np.einsum("xybcpq,b,c->xypq", self._table, ph1, ph2)
        return blk.transpose(0, 2, 1, 3).reshape(ne * self.op.k, ne * self.op.k)

    def all_blocks(self) -> np.ndarray:
        """All momentum blocks, shape (n1, n2, n_eta*k, n_eta*k)."""
        ne, n1, n2 = self.shape
        k = self.op.k
        hat = np.fft.fft2(self._table, axes=(2, 3))
        return hat.transpose(2, 3, 0, 4, 1, 5).reshape(n1, n2, ne * k, ne * k)

    def defect(self) -> float:
        """Spectral norm of C^2 - I/4 via the exact block decomposition."""
        blocks = self.all_blocks()
        ne = self.shape[0]
        eye = 0.25 * np.eye(ne * self.op.k)
        worst = 0.0
        for b in blocks.reshape(-1, ne * self.op.k, ne * self.op.k):
            worst = max(worst, float(np.linalg.norm(b @ b - eye, 2)))
        return worst

    def apply_torus_mode(self, profile: np.ndarray, mode: tuple[int, int]) -> np.ndarray:
        """Apply C to u = e^{i(m1 theta1 + m2 theta2)} profile(eta).

        ``profile`` has shape (n_eta, k).  Returns the value of C u at the
        reference nodes (theta1 = theta2 = 0) as an (n_eta, k) array.
        """
        ne, n1, n2 = self.shape
        k = self.op.k
        m1, m2 = mode
        # gauged components live at shifted momenta
        out = np.zeros((ne, k), dtype=complex)
        comps = [((m1, m2), 0), ((m1 - 1, m2 + 1), 1)]
        for (kb, kc), comp in comps:
            vec = np.zeros((ne, k), dtype=complex)
            vec[:, comp] = profile[:, comp]
            blk = self.momentum_block(kb % n1, kc % n2)
            res = (blk @ vec.reshape(-1)).reshape(ne, k)
            out += res   # at the reference nodes every phase factor is 1
        return out
