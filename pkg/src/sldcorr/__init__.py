"""Sharp large-deviation tail approximations for empirical correlation
coefficients, validated against exact-density quadrature and Monte Carlo.

The package covers the mean-centered and known-mean coefficients under a
spherical sampling model and under a bivariate Gaussian model with
correlation rho, the associated rate functions and saddlepoints, a
log-space quadrature oracle on the exact densities, a seeded Monte Carlo
oracle, and Bahadur exact slopes for the correlation test.
"""

from .bahadur import TestReport, bahadur_slope, kl_infimum, p_value_sld
from .densities import log_density, mgf_exact, tail_exact
from .errors import DomainError, JetError, NonConvergenceError, QuadratureError
from .laplace import (
    DerivativeJet,
    find_interior_max,
    laplace_coefficient,
    laplace_coefficients,
    laplace_expand,
)
from .montecarlo import McEstimate, sample_batch, sample_coefficient, tail_mc
from .quadrature import QuadratureResult, log_quad
from .scenarios import Model, Scenario
from .sld import (
    RHO_CONVEXITY_LIMIT,
    NcgfExpansion,
    SaddlePoint,
    TailEstimate,
    convexity_profile,
    ncgf_limit_gaussian,
    ncgf_limit_spherical,
    r0_of_lambda,
    rate_function,
    rate_legendre_numeric,
    rate_second_derivative,
    saddle,
    tail_sld,
)
from .specfun import (
    bell_complete,
    bell_partial,
    double_factorial_odd,
    hyp2f1,
    hyp2f1_temme,
    log_gamma,
    log_gamma_ratio,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Model",
    "Scenario",
    "DomainError",
    "JetError",
    "NonConvergenceError",
    "QuadratureError",
    "log_gamma",
    "log_gamma_ratio",
    "double_factorial_odd",
    "bell_partial",
    "bell_complete",
    "hyp2f1",
    "hyp2f1_temme",
    "DerivativeJet",
    "find_interior_max",
    "laplace_coefficient",
    "laplace_coefficients",
    "laplace_expand",
    "QuadratureResult",
    "log_quad",
    "log_density",
    "tail_exact",
    "mgf_exact",
    "RHO_CONVEXITY_LIMIT",
    "SaddlePoint",
    "TailEstimate",
    "NcgfExpansion",
    "r0_of_lambda",
    "ncgf_limit_spherical",
    "ncgf_limit_gaussian",
    "saddle",
    "tail_sld",
    "rate_function",
    "rate_legendre_numeric",
    "rate_second_derivative",
    "convexity_profile",
    "McEstimate",
    "sample_coefficient",
    "sample_batch",
    "tail_mc",
    "TestReport",
    "bahadur_slope",
    "kl_infimum",
    "p_value_sld",
]
