"""Fundamental solutions and the boundary Cauchy kernel.

The Laplace kernel e and the matrix kernel Phi are related by
Phi(d) = 4 A^*(d/dzeta, d/dzetabar) e(d), which evaluates in closed form to

    Phi(d) = (n-1)!/pi^n * [sum_j alpha_j conj(d_j) + beta_j d_j]^* / |d|^{2n},

homogeneous of degree 1-2n.  For one variable this is the classical Cauchy
kernel (1/pi) / d.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .clifford import DiracOperator, boundary_symbol

__all__ = [
    "KernelContext",
    "laplace_fundamental",
    "phi",
    "phi_many",
    "cauchy_kernel",
    "coefficient_contraction",
]


@dataclass(frozen=True)
class KernelContext:
    """Dirac operator plus the normalization (n-1)!/pi^n of its kernel."""

    op: DiracOperator

    @property
    def n(self) -> int:
        return self.op.n

    @property
    def constant(self) -> float:
        return math.factorial(self.n - 1) / np.pi ** self.n


def laplace_fundamental(n: int, z) -> float:
    """Rotation-invariant fundamental solution of the Laplacian in R^{2n}."""
    z = np.asarray(z, dtype=complex)
    r = float(np.sqrt((np.abs(z) ** 2).sum()))
    if r == 0.0:
        raise ZeroDivisionError("fundamental solution is singular at the origin")
    if n == 1:
        return float(np.log(r) / (2 * np.pi))
    return math.factorial(n - 1) / (2 * np.pi ** n) / (2 - 2 * n) / r ** (2 * n - 2)


def coefficient_contraction(op: DiracOperator, w) -> np.ndarray:
    """sum_j alpha_j conj(w_j) + beta_j w_j for w of shape (..., n)."""
    w = np.asarray(w, dtype=complex)
    out = np.zeros(w.shape[:-1] + (op.k, op.k), dtype=complex)
    for j in range(op.n):
        out += op.alpha[j] * np.conj(w[..., j, None, None])
        out += op.beta[j] * w[..., j, None, None]
    return out


def phi_many(ctx: KernelContext, d) -> np.ndarray:
    """Matrix kernel at displacements d of shape (..., n); returns (..., k, k)."""
    d = np.asarray(d, dtype=complex)
    r2 = (np.abs(d) ** 2).sum(axis=-1)
    if np.any(r2 == 0):
        raise ZeroDivisionError("kernel is singular at coincident points")
    mats = coefficient_contraction(ctx.op, d).conj().swapaxes(-1, -2)
    return ctx.constant * mats / r2[..., None, None] ** ctx.n


def phi(ctx: KernelContext, d) -> np.ndarray:
    """Matrix kernel at a single displacement d in C^n."""
    return phi_many(ctx, np.asarray(d, dtype=complex))


def cauchy_kernel(ctx: KernelContext, z, node_z, node_nu_c) -> np.ndarray:
    """Integrand block -Phi(z - zeta) sigma(zeta) of the singular integral.

    ``z`` and ``node_z`` are complex points, ``node_nu_c`` the unit complex
    normal at the node.  The quadrature weight is not included.
    """
    d = np.asarray(z, dtype=complex) - np.asarray(node_z, dtype=complex)
    return -phi(ctx, d) @ boundary_symbol(ctx.op, node_nu_c)
