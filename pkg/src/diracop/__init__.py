"""Numerical operator calculus for Dirac operators in several complex variables.

Singular Cauchy-type integrals, Szego-type projections, Toeplitz operators
and their index on circles and 3-spheres, together with the quaternion and
octonion algebra underlying the conjugation-mixed multiplier families.
"""

__version__ = "0.1.0"

from .clifford import (
    DiracOperator,
    build_dirac,
    check_identities,
    principal_symbol,
    adjoint_symbol,
    boundary_symbol,
    polynomial_solutions,
)
from .geometry import (
    Domain,
    BoundaryGrid,
    VolumeGrid,
    make_circle_grid,
    make_s3_grid,
    make_disc_grid,
)
from .kernels import KernelContext, laplace_fundamental, phi, cauchy_kernel
from .boundary_ops import (
    Density,
    BoundaryOperator,
    assemble_cauchy,
    szego_projection,
    projection_defect,
    interior_eval,
    exterior_vanishing,
    exact_szego_circle,
    fourier_cauchy_circle,
    HopfCauchy,
)
from .symbols import (
    CosphereSample,
    cosphere_samples,
    cauchy_symbol,
    calibrate_kappa,
    pv_integral_check,
    projection_symbol,
    toeplitz_ext_symbol,
    ellipticity_scan,
    numeric_symbol_extraction,
)
from .toeplitz import (
    Multiplier,
    toeplitz_op,
    extension_op,
    winding_index,
    numeric_kernel_count,
    hardy_basis,
    semicommutator,
)
from .cayley import (
    Quaternion,
    Octonion,
    DicksonMatrix,
    RealLinearMap,
    octonion_mult,
    dickson_product,
    alternativity_check,
    octonion_dirac,
    x_form_multiplier,
    commutant_multiplier,
    x_algebra_product,
    x_invertibility,
)
