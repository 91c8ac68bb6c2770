"""Stability and holomorphicity of minimal surfaces from Weierstrass-Enneper data."""

from .errors import (CapacityError, GridTooCoarseError, InvalidRepresentationError,
                     NotIsotropicError)
from .geometry import (R3Rep, WEData, conformality_residual, from_r3, gauss_map,
                       spherical_area_coefficient, surface_point, twist)
from .isotropy import (ComplexStructureJ, GramTable, Isotropic, Violation, construct_J,
                       ek_values, gram, holomorphy_check, symmetric_vanishing_solve)
from .oracle import (DiskQuadrature, F_h_quadrature, monomial_integral_check,
                     rayleigh_r3)
from .roots import smallest_positive_root
from .series import (CoefficientSeries, antiderivative, default_n_max, derivative,
                     evaluate, multiply, rescale_lemma)
from .variational import (DestabCertificate, QuadraticProfile, RadiusResult, TestFunction,
                          F_h, c_criterion, destab_search, f_functional_closed,
                          poisson_coeffs, quadratic_profile, radius_certificate,
                          radius_r3)

__version__ = "0.1.0"

__all__ = [
    "CapacityError", "GridTooCoarseError", "InvalidRepresentationError",
    "NotIsotropicError", "R3Rep", "WEData", "conformality_residual", "from_r3",
    "gauss_map", "spherical_area_coefficient", "surface_point", "twist",
    "ComplexStructureJ", "GramTable", "Isotropic", "Violation", "construct_J",
    "ek_values", "gram", "holomorphy_check", "symmetric_vanishing_solve",
    "DiskQuadrature", "F_h_quadrature", "monomial_integral_check", "rayleigh_r3",
    "smallest_positive_root", "CoefficientSeries", "antiderivative", "default_n_max",
    "derivative", "evaluate", "multiply", "rescale_lemma", "DestabCertificate",
    "QuadraticProfile", "RadiusResult", "TestFunction", "F_h", "c_criterion",
    "destab_search", "f_functional_closed", "poisson_coeffs", "quadratic_profile",
    "radius_certificate", "radius_r3",
]
