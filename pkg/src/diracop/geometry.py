"""Discs, balls, their boundaries and quadrature grids.

Boundary grids carry nodes, positive weights for the surface measure,
unit outward normals and the complexified normals nu_c_j = nu_j + i nu_{n+j}.
Real coordinates are ordered (x_1..x_n, x_{n+1}..x_{2n}) with
z_j = x_j + i x_{n+j}.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss

__all__ = [
    "Domain",
    "BoundaryGrid",
    "VolumeGrid",
    "make_circle_grid",
    "make_s3_grid",
    "make_disc_grid",
    "check_form_pullback",
]


@dataclass(frozen=True)
class Domain:
    """Ball |x - center| < radius in R^{2n} with defining function rho."""

    n: int
    radius: float = 1.0
    center: np.ndarray = None

    def __post_init__(self):
        c = np.zeros(2 * self.n) if self.center is None else np.asarray(self.center, float)
        object.__setattr__(self, "center", c)

    def rho(self, x) -> np.ndarray:
        x = np.asarray(x, float)
        return ((x - self.center) ** 2).sum(axis=-1) - self.radius ** 2

    def grad_rho(self, x) -> np.ndarray:
        return 2.0 * (np.asarray(x, float) - self.center)

    def to_complex(self, x) -> np.ndarray:
        """Map real coordinates (..., 2n) to complex points (..., n)."""
        x = np.asarray(x, float)
        return x[..., : self.n] + 1j * x[..., self.n:]

    def center_complex(self) -> np.ndarray:
        return self.to_complex(self.center)


@dataclass
class BoundaryGrid:
    """Quadrature nodes on the boundary sphere with normals and weights."""

    domain: Domain
    nodes: np.ndarray          # (M, 2n) real
    weights: np.ndarray        # (M,) positive
    normals: np.ndarray        # (M, 2n) unit outward
    complex_normals: np.ndarray  # (M, n)
    kind: str = "generic"
    params: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return self.nodes.shape[0]

    def nodes_complex(self) -> np.ndarray:
        return self.domain.to_complex(self.nodes)

    def spacing(self) -> float:
        """Typical node spacing (measure per node)^(1/dim), for guard bands."""
        dim = 2 * self.domain.n - 1
        return float((self.weights.sum() / self.size) ** (1.0 / dim))

    def to_json(self) -> str:
        scalars = {k: v for k, v in self.params.items()
                   if isinstance(v, (int, float, str))}
        return json.dumps({
            "type": self.kind,
            "params": scalars,
            "nodes": self.nodes.tolist(),
            "weights": self.weights.tolist(),
            "normals": self.normals.tolist(),
        })


@dataclass
class VolumeGrid:
    """Interior quadrature for the disc (one complex variable only)."""

    domain: Domain
    nodes: np.ndarray      # (M, 2) real
    weights: np.ndarray    # (M,)
    params: dict = field(default_factory=dict)

    def nodes_complex(self) -> np.ndarray:
        return self.domain.to_complex(self.nodes)[..., 0]


def make_circle_grid(num_nodes: int, radius: float = 1.0, center=None) -> BoundaryGrid:
    """Equispaced trapezoidal grid on a circle; spectrally accurate."""
    if num_nodes < 4 or num_nodes % 2:
        raise ValueError(f"node count must be even and >= 4, got {num_nodes}")
    dom = Domain(n=1, radius=radius, center=center)
    theta = 2 * np.pi * np.arange(num_nodes) / num_nodes
    normals = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    nodes = dom.center[None, :] + radius * normals
    weights = np.full(num_nodes, 2 * np.pi * radius / num_nodes)
    nu_c = (normals[:, 0] + 1j * normals[:, 1])[:, None]
    return BoundaryGrid(dom, nodes, weights, normals, nu_c,
                        kind="circle",
                        params={"num_nodes": num_nodes, "radius": radius,
                                "theta": theta})


def make_s3_grid(n_eta: int, n_theta1: int, n_theta2: int,
                 radius: float = 1.0, center=None) -> BoundaryGrid:
    """Product grid on the 3-sphere in Hopf coordinates.

    z1 = R cos(eta) e^{i theta1}, z2 = R sin(eta) e^{i theta2} with
    Gauss-Legendre nodes in eta on (0, pi/2) and trapezoidal nodes in both
    angles; the weights carry the area factor R^3 sin(eta) cos(eta).
    """
    for c in (n_eta, n_theta1, n_theta2):
        if c < 4:
            raise ValueError("all node counts must be >= 4")
    dom = Domain(n=2, radius=radius, center=center)
    x, gw = leggauss(n_eta)
    eta = (x + 1) * np.pi / 4
    w_eta = gw * np.pi / 4
    t1 = 2 * np.pi * np.arange(n_theta1) / n_theta1
    t2 = 2 * np.pi * np.arange(n_theta2) / n_theta2
    E, T1, T2 = np.meshgrid(eta, t1, t2, indexing="ij")
    z1 = np.cos(E) * np.exp(1j * T1)
    z2 = np.sin(E) * np.exp(1j * T2)
    nu_c = np.stack([z1, z2], axis=-1).reshape(-1, 2)
    normals = np.concatenate([nu_c.real, nu_c.imag], axis=-1)
    nodes = dom.center[None, :] + radius * normals
    W = (radius ** 3 * np.sin(E) * np.cos(E) * w_eta[:, None, None]
         * (2 * np.pi / n_theta1) * (2 * np.pi / n_theta2))
    return BoundaryGrid(dom, nodes, W.ravel(), normals, nu_c,
                        kind="s3",
                        params={"n_eta": n_eta, "n_theta1": n_theta1,
                                "n_theta2": n_theta2, "radius": radius,
                                "eta": eta, "w_eta": w_eta})


def make_disc_grid(n_r: int, n_theta: int, radius: float = 1.0, center=None) -> VolumeGrid:
    """Polar product grid on the disc: Gauss-Legendre radially, trapezoid in angle."""
    if n_r < 4 or n_theta < 4:
        raise ValueError("node counts must be >= 4")
    dom = Domain(n=1, radius=radius, center=center)
    x, gw = leggauss(n_r)
    r = (x + 1) * radius / 2
    w_r = gw * radius / 2 * r          # Jacobian r
    theta = 2 * np.pi * np.arange(n_theta) / n_theta
    R, T = np.meshgrid(r, theta, indexing="ij")
    nodes = dom.center[None, :] + np.stack([(R * np.cos(T)).ravel(),
                                            (R * np.sin(T)).ravel()], axis=-1)
    weights = (w_r[:, None] * np.full(n_theta, 2 * np.pi / n_theta)[None, :]).ravel()
    return VolumeGrid(dom, nodes, weights,
                      params={"n_r": n_r, "n_theta": n_theta, "radius": radius,
                              "r": r, "theta": theta})


def check_form_pullback(grid: BoundaryGrid, m: int, f, grad_f,
                        expected: float | None = None,
                        volume: VolumeGrid | None = None) -> float:
    """Divergence-theorem consistency of the weighted normals.

    Compares the surface quadrature of f * nu_m against the volume integral
    of d f / d x_m (computed on ``volume`` for n=1, or supplied in closed
    form via ``expected``).  Returns the absolute residual.
    """
    fx = np.asarray([f(x) for x in grid.nodes], dtype=float)
    surface = float((grid.weights * fx * grid.normals[:, m]).sum())
    if expected is None:
        if volume is None:
            raise ValueError("need either a closed-form value or a volume grid")
        g = np.asarray([grad_f(x)[m] for x in volume.nodes], dtype=float)
        expected = float((volume.weights * g).sum())
    return abs(surface - expected)
