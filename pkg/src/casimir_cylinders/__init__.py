"""Casimir interaction of two parallel cylinders, interior or exterior.

Exact energies and forces from the round-trip determinant, the proximity
force approximation, short-distance expansions with their next-to-leading
brackets, and the Gaussian-chain machinery that validates those brackets.
Units: hbar = c = 1; every result is per unit cylinder length.
"""

from .asymptotics import (
    ENERGY_BRACKETS,
    FORCE_BRACKETS,
    ExpansionKind,
    ExpansionResult,
    PfaBias,
    classify_pfa_bias,
    cylinder_plate_limit,
    energy_expansion,
    force_expansion,
    limit_consistency_check,
)
from .errors import (
    CasimirCylError,
    DomainError,
    InvalidGeometry,
    NoConvergence,
    NonPositiveDeterminant,
    PSumNoConvergence,
    StencilDomain,
)
from .geometry import (
    BoundaryPair,
    CylinderPair,
    DerivedParams,
    Kind,
    derive_params,
)
from .pfa import PfaMethod, PfaResult, pfa_force_integral, pfa_force_leading
from .quadrature import QuadratureSpec, gauss_hermite, integrate_finite, integrate_semi_infinite
from .scattering import (
    EnergyResult,
    RoundTripMatrix,
    build_matrix,
    casimir_energy_exact,
    casimir_force_exact,
    log_det_one_minus,
    matrix_element,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryPair",
    "CasimirCylError",
    "CylinderPair",
    "DerivedParams",
    "DomainError",
    "ENERGY_BRACKETS",
    "EnergyResult",
    "ExpansionKind",
    "ExpansionResult",
    "FORCE_BRACKETS",
    "InvalidGeometry",
    "Kind",
    "NoConvergence",
    "NonPositiveDeterminant",
    "PSumNoConvergence",
    "PfaBias",
    "PfaMethod",
    "PfaResult",
    "QuadratureSpec",
    "RoundTripMatrix",
    "StencilDomain",
    "build_matrix",
    "casimir_energy_exact",
    "casimir_force_exact",
    "classify_pfa_bias",
    "cylinder_plate_limit",
    "derive_params",
    "energy_expansion",
    "force_expansion",
    "gauss_hermite",
    "integrate_finite",
    "integrate_semi_infinite",
    "limit_consistency_check",
    "log_det_one_minus",
    "matrix_element",
    "pfa_force_integral",
    "pfa_force_leading",
    "__version__",
]
