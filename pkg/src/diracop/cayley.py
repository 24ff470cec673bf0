"""Quaternion and octonion algebra, and the conjugation-mixed operator on C^4.

Octonions are pairs of quaternions under the Cayley-Dickson product
(a, b)(c, d) = (ac - conj(d) b, da + b conj(c)); the doubling matrices
[[a, -b], [conj(b), conj(a)]] with this special multiplication form an
alternative (not associative) algebra.  All conjugation-mixed operators on
C^m are handled as real-linear maps v -> P v + Q conj(v); over the reals
these are honest matrices, and Fredholm questions for the associated
Toeplitz operators are posed in that real sense.

Quaternions are stored as four real components so that integer and
Fraction inputs stay exact; complex 2x2 pictures appear only through the
component maps below.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "Quaternion",
    "Octonion",
    "DicksonMatrix",
    "RealLinearMap",
    "octonion_mult",
    "dickson_product",
    "alternativity_check",
    "OctonionDirac",
    "octonion_dirac",
    "x_form_multiplier",
    "quaternion_conjugation_map",
    "commutant_multiplier",
    "x_algebra_product",
    "x_invertibility",
    "XInvertibility",
]


@dataclass(frozen=True)
class Quaternion:
    """Quaternion w + x i + y j + z k over any exact or float scalar type."""

    w: object = 0
    x: object = 0
    y: object = 0
    z: object = 0

    def __add__(self, other):
        return Quaternion(self.w + other.w, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    def __sub__(self, other):
        return Quaternion(self.w - other.w, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        a1, b1, c1, d1 = self.w, self.x, self.y, self.z
        a2, b2, c2, d2 = other.w, other.x, other.y, other.z
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm_sq(self):
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def norm(self) -> float:
        return float(self.norm_sq()) ** 0.5

    def is_zero(self) -> bool:
        return self.w == 0 and self.x == 0 and self.y == 0 and self.z == 0

    def components(self):
        return (self.w, self.x, self.y, self.z)

    def to_c2(self):
        """Components (a, b) of q = a + b j with a, b complex."""
        return complex(self.w) + 1j * complex(self.x), complex(self.y) + 1j * complex(self.z)

    @staticmethod
    def random_rational(rng, den: int = 8) -> "Quaternion":
        nums = rng.integers(-den, den + 1, size=4)
        return Quaternion(*[Fraction(int(v), den) for v in nums])


@dataclass(frozen=True)
class Octonion:
    """Pair of quaternions under the Cayley-Dickson product."""

    a: Quaternion
    b: Quaternion

    def __add__(self, other):
        return Octonion(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return Octonion(self.a - other.a, self.b - other.b)

    def __mul__(self, other):
        return octonion_mult(self, other)

    def norm_sq(self):
        return self.a.norm_sq() + self.b.norm_sq()

    def norm(self) -> float:
        return float(self.norm_sq()) ** 0.5

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def components(self):
        return self.a.components() + self.b.components()


def octonion_mult(x: Octonion, y: Octonion) -> Octonion:
    """Cayley-Dickson product (a,b)(c,d) = (ac - conj(d) b, da + b conj(c))."""
    a, b = x.a, x.b
    c, d = y.a, y.b
    return Octonion(a * c - d.conjugate() * b, d * a + b * c.conjugate())


@dataclass(frozen=True)
class DicksonMatrix:
    """Doubling matrix [[a, -b], [conj b, conj a]], determined by its pair."""

    a: Quaternion
    b: Quaternion

    def pair(self) -> Octonion:
        return Octonion(self.a, self.b)

    def entries(self):
        return ((self.a, -self.b), (self.b.conjugate(), self.a.conjugate()))


def dickson_product(D: DicksonMatrix, P: DicksonMatrix) -> DicksonMatrix:
    """Special multiplication of doubling matrices.

    The product matrix is the one attached to the Cayley-Dickson product of
    the underlying pairs; its top row reads (ac - conj(d) b, -(da + b conj(c)))
    and the bottom row is the conjugate-determined completion.
    """
    prod = octonion_mult(D.pair(), P.pair())
    return DicksonMatrix(prod.a, prod.b)


def alternativity_check(D: DicksonMatrix, P: DicksonMatrix):
    """Residual octonion pairs of D(DP) - (DD)P and (PD)D - P(DD).

    Exactly zero over the rationals; returns the two max-residual floats.
    """
    left = dickson_product(D, dickson_product(D, P)).pair() - \
        dickson_product(dickson_product(D, D), P).pair()
    right = dickson_product(dickson_product(P, D), D).pair() - \
        dickson_product(P, dickson_product(D, D)).pair()

    def resid(o: Octonion) -> float:
        return max(abs(float(c)) for c in o.components())

    return resid(left), resid(right)


# ---------------------------------------------------------------------------
# real-linear maps
# ---------------------------------------------------------------------------

@dataclass
class RealLinearMap:
    """Real-linear operator v -> P v + Q conj(v) on C^m."""

    P: np.ndarray
    Q: np.ndarray

    def __post_init__(self):
        self.P = np.asarray(self.P, dtype=complex)
        self.Q = np.asarray(self.Q, dtype=complex)
        if self.P.shape != self.Q.shape or self.P.shape[0] != self.P.shape[1]:
            raise ValueError("blocks must be square and of equal shape")

    @property
    def dim(self) -> int:
        return self.P.shape[0]

    @staticmethod
    def linear(P) -> "RealLinearMap":
        P = np.asarray(P, dtype=complex)
        return RealLinearMap(P, np.zeros_like(P))

    @staticmethod
    def identity(m: int) -> "RealLinearMap":
        return RealLinearMap(np.eye(m), np.zeros((m, m)))

    def apply(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=complex)
        return self.P @ v + self.Q @ np.conj(v)

    def compose(self, other: "RealLinearMap") -> "RealLinearMap":
        """self after other: (A + B c)(C + D c) = (AC + B conj D) + (AD + B conj C) c."""
        A, B, C, D = self.P, self.Q, other.P, other.Q
        return RealLinearMap(A @ C + B @ np.conj(D), A @ D + B @ np.conj(C))

    def __add__(self, other):
        return RealLinearMap(self.P + other.P, self.Q + other.Q)

    def __sub__(self, other):
        return RealLinearMap(self.P - other.P, self.Q - other.Q)

    def __neg__(self):
        return RealLinearMap(-self.P, -self.Q)

    def commutator(self, other: "RealLinearMap") -> "RealLinearMap":
        return self.compose(other) - other.compose(self)

    def real_matrix(self) -> np.ndarray:
        """Matrix on R^{2m} in coordinates (Re v, Im v)."""
        P, Q = self.P, self.Q
        return np.block([[P.real + Q.real, -P.imag + Q.imag],
                         [P.imag + Q.imag, P.real - Q.real]])

    def norm(self) -> float:
        return float(np.linalg.norm(self.real_matrix(), 2))

    def min_singular_value(self) -> float:
        return float(np.linalg.svd(self.real_matrix(), compute_uv=False)[-1])


def quaternion_conjugation_map() -> RealLinearMap:
    """Quaternion conjugation on C^2 components (a, b) -> (conj a, -b)."""
    return RealLinearMap(np.diag([0.0, -1.0]), np.diag([1.0, 0.0]))


def x_form_multiplier(w1: complex, w2: complex) -> RealLinearMap:
    """Commutant building block on C^2 attached to the pair (w1, w2).

    Realized as right multiplication by the quaternion w1 + w2 j in the
    coordinates q = a + b j, i.e. the complex-linear matrix
    [[w1, -conj w2], [w2, conj w1]].  Written in the mirrored coordinates
    q = a + j b the same map takes the conjugation-mixed two-parameter
    shape, which is how the family is usually displayed.
    """
    return RealLinearMap.linear(np.array([[w1, -np.conj(w2)], [w2, np.conj(w1)]]))


def _scatter(target: RealLinearMap, rows, cols, block: RealLinearMap):
    target.P[np.ix_(rows, cols)] += block.P
    target.Q[np.ix_(rows, cols)] += block.Q


def commutant_multiplier(X: RealLinearMap, Y: RealLinearMap) -> RealLinearMap:
    """Assemble the 2x2-block multiplier [[X, -Y C], [Y C, X]] on C^4.

    C is quaternion conjugation.  The quaternion pairs are the component
    sets (u1, u3) and (u2, u4).  When X and Y are of the commutant form
    with Y = 0 the result commutes with the symbol of the operator below.
    """
    C = quaternion_conjugation_map()
    YC = Y.compose(C)
    M = RealLinearMap(np.zeros((4, 4), complex), np.zeros((4, 4), complex))
    g1, g2 = [0, 2], [1, 3]
    _scatter(M, g1, g1, X)
    _scatter(M, g1, g2, -YC)
    _scatter(M, g2, g1, YC)
    _scatter(M, g2, g2, X)
    return M


# ---------------------------------------------------------------------------
# the conjugation-mixed first-order operator on C^4
# ---------------------------------------------------------------------------

# entry table (row, col, deriv kind, variable index 1..4, sign, conjugated)
_ENTRIES = [
    (0, 0, "zbar", 1, +1, False), (0, 1, "zbar", 2, -1, False),
    (0, 2, "zbar", 3, -1, True), (0, 3, "zbar", 4, +1, True),
    (1, 0, "z", 2, +1, False), (1, 1, "z", 1, +1, False),
    (1, 2, "zbar", 4, +1, True), (1, 3, "zbar", 3, +1, True),
    (2, 0, "zbar", 3, +1, True), (2, 1, "zbar", 4, -1, True),
    (2, 2, "zbar", 1, +1, False), (2, 3, "zbar", 2, -1, False),
    (3, 0, "zbar", 4, -1, True), (3, 1, "zbar", 3, -1, True),
    (3, 2, "z", 2, +1, False), (3, 3, "z", 1, +1, False),
]


@dataclass(frozen=True)
class OctonionDirac:
    """First-order operator on C^4 with complex-conjugation entries.

    Rewrites the 2x2 quaternion system with entries d/dz_i + d/dzbar_{2+i}
    times the unit j; conjugation entries act on the conjugated component.
    ``entries`` lists (row, col, kind, variable, sign, conjugated).
    """

    entries: tuple

    def symbol(self, xi) -> RealLinearMap:
        """Principal symbol at a real covector xi in R^8 as a real-linear map.

        Plain entries contribute to the complex-linear block, conjugation
        entries to the antilinear block; both use the same first-order
        factors (-1/2) conj(zeta_j) for d/dz_j and (-1/2) zeta_j for
        d/dzbar_j, matching the convention of the square systems.
        """
        xi = np.asarray(xi, dtype=float)
        if xi.shape != (8,):
            raise ValueError("covector must lie in R^8")
        zeta = xi[:4] + 1j * xi[4:]
        L = np.zeros((4, 4), dtype=complex)
        Q = np.zeros((4, 4), dtype=complex)
        for row, col, kind, var, sign, conj in self.entries:
            factor = -0.5 * (np.conj(zeta[var - 1]) if kind == "z" else zeta[var - 1])
            target = Q if conj else L
            target[row, col] += sign * factor
        return RealLinearMap(L, Q)

    def laplacian_defect(self, xi) -> float:
        """Deviation of S(xi)^T S(xi) from |xi|^2/4 on R^8, reported not asserted."""
        S = self.symbol(xi).real_matrix()
        xi = np.asarray(xi, dtype=float)
        target = 0.25 * (xi @ xi) * np.eye(8)
        return float(np.abs(S.T @ S - target).max())


def octonion_dirac() -> OctonionDirac:
    return OctonionDirac(entries=tuple(_ENTRIES))


# ---------------------------------------------------------------------------
# the commutant algebra
# ---------------------------------------------------------------------------

def x_algebra_product(x1: tuple, x2: tuple) -> tuple:
    """Product pair of two commutant building blocks.

    (w1, w2) pairs multiply like the quaternions w1 + w2 j:
    (w1' w1'' - w2' conj(w2''), w2' conj(w1'') + w1' w2'').  The map of the
    product equals the composition 'first x1, then x2' of the maps, which
    is asserted exactly by the test suite.
    """
    w11, w21 = x1
    w12, w22 = x2
    return (w11 * w12 - w21 * np.conj(w22), w21 * np.conj(w12) + w11 * w22)


@dataclass
class XInvertibility:
    invertible: bool
    real_determinant: float
    stated_expression: complex
    consistent_when_real: bool


def x_invertibility(w1: complex, w2: complex) -> XInvertibility:
    """Invertibility of a commutant block, with the quoted determinant formula.

    The real 4x4 determinant equals (|w1|^2 + |w2|^2)^2, so the block is
    invertible iff (w1, w2) != 0.  The quoted closed form w1^2 + |w2|^2
    matches its square only for real w1; both values are reported side by
    side and the discrepancy domain is flagged rather than resolved.
    """
    mp = x_form_multiplier(w1, w2)
    det = float(np.linalg.det(mp.real_matrix()))
    stated = complex(w1) ** 2 + abs(complex(w2)) ** 2
    consistent = abs(complex(w1).imag) < 1e-12 and abs(det - stated.real ** 2) < 1e-9 * max(1.0, abs(det))
    return XInvertibility(invertible=abs(det) > 1e-14,
                          real_determinant=det,
                          stated_expression=stated,
                          consistent_when_real=bool(consistent))
