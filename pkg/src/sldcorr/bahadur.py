"""Bahadur efficiency of the correlation test, and its tail p-values.

Testing rho = 0 against rho != 0 in the bivariate Gaussian model with the
coefficient as statistic: under the alternative the statistic converges to
rho, and the null tail satisfies (1/n) log P_0(sqrt(n) r >= sqrt(n) t)
-> (1/2) log(1 - t^2), so the exact slope is

    c(rho) = -log(1 - rho^2)  (positive for rho != 0).

The Kullback-Leibler infimum over the null (any means, any variances,
diagonal covariance) is J(rho) = -(1/2) log(1 - rho^2): the slope attains
the optimality bound c = 2 J exactly.

The null law of the coefficient does not depend on the nuisance means and
variances (the statistic is invariant), so the supremum defining the
p-value is a single evaluation under the standard null.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import densities, sld
from .errors import DomainError
from .scenarios import Model, Scenario

__all__ = ["TestReport", "bahadur_slope", "kl_infimum", "p_value_sld"]


@dataclass(frozen=True)
class TestReport:
    """Outcome of the correlation test at an observed coefficient.

    ``log_p_value`` is the sharp-approximation p-value; it is an
    asymptotic tail object and can exceed log(1) when sqrt(n) * r_obs is
    small (below the large-deviation regime), where ``log_p_value_exact``
    -- the quadrature value, always a true probability -- should be used
    instead.  ``slope_at_estimate`` is the exact slope evaluated at the
    plug-in alternative rho = r_obs.
    """

    statistic: float
    n: int
    log_p_value: float
    log_p_value_exact: float
    slope_at_estimate: float


def bahadur_slope(rho: float) -> float:
    """Exact slope c(rho) = -log(1 - rho^2) of the correlation test.

    Positive for every admissible alternative: the p-value decays at
    exponential rate n * c(rho) / 2 under rho.
    """
    if rho == 0.0:
        raise DomainError("the slope is defined under the alternative (rho != 0)")
    if not abs(rho) < 1.0:
        raise DomainError(f"slope requires |rho| < 1, got {rho}")
    return -math.log1p(-rho * rho)


def kl_infimum(rho: float) -> float:
    """Infimum J(rho) of the Kullback-Leibler information over the null.

    Minimizing KL(N(mu, Sigma) || N(mu0, Sigma0)) over all null parameters
    (mu0 free, Sigma0 diagonal) lands at mu0 = mu and matching diagonal,
    leaving J(rho) = -(1/2) log(1 - rho^2).
    """
    if not abs(rho) < 1.0:
        raise DomainError(f"KL infimum requires |rho| < 1, got {rho}")
    return -0.5 * math.log1p(-rho * rho)


def p_value_sld(n: int, r_obs: float, *, known_mean: bool = False) -> TestReport:
    """p-value of the one-sided correlation test at the observed r.

    The null law of the coefficient is the parameter-free spherical law
    (centered or known-mean per the study design); the report carries both
    the sharp-approximation value and the exact quadrature value.
    """
    if not 0.0 < r_obs < 1.0:
        raise DomainError(f"observed coefficient must lie in (0, 1), got {r_obs}")
    null = Scenario(Model.SPHERICAL_KNOWN_MEAN if known_mean else Model.SPHERICAL_CENTERED)
    log_p = sld.tail_sld(null, n, r_obs).log_prob
    log_p_exact = densities.tail_exact(null, n, r_obs).log_value
    return TestReport(r_obs, n, log_p, log_p_exact, bahadur_slope(r_obs))
