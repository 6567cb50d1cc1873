"""Rate functions, saddlepoints, and sharp tail approximations.

Spherical model (both centerings).  The normalized cumulant generating
function of the coefficient converges to

    L(lam) = (s - 1)/2 - (1/2) log((1 + s)/2),      s = sqrt(1 + 4 lam^2),

whose Legendre dual is L*(y) = -(1/2) log(1 - y^2).  The 1/n correction to
L_n depends on the centering:

    centered:    -( (1/4) log(1+4 lam^2) - (3/2) log((1+s)/2) )
    known mean:  -( (1/4) log(1+4 lam^2) -       log((1+s)/2) )

At the tilt lam_c = c/(1-c^2) these corrections exponentiate to the tail
prefactors 1/((1-c^2) sqrt(1+c^2)) and 1/sqrt((1-c^2)(1+c^2)).

Gaussian model with correlation rho.  The tilted phase is

    hbar(r) = lam r - log(1 - rho r) + (1/2) log(1 - r^2),

strictly concave on (-1, 1) exactly when |rho| <= sqrt(3 + 2 sqrt(3))/3,
and the rate function is

    I_rho(y) = log( (1 - rho y) / (sqrt(1-rho^2) sqrt(1-y^2)) ).

The tail estimate multiplies exp(-n * rate) by
gbar_rho(c)/sqrt(|hbar''(c)|) / (lam_c sigma_c sqrt(2 pi n)) with
gbar_rho(r) = (1-rho^2)^{-1/2} (1-rho r)^{3/2} (1-r^2)^{-2}.

All functions are pure.  Tail estimates carry the leading exponent and the
log prefactor separately so callers can study the two pieces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .laplace import DerivativeJet, find_interior_max
from .scenarios import Model, Scenario

__all__ = [
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
    "h_jet",
    "hbar_jet",
    "sym_power_jet",
    "gbar_rho",
    "hbar_root",
]

# largest |rho| for which the tilted Gaussian phase stays concave on (-1,1)
RHO_CONVEXITY_LIMIT = math.sqrt(3.0 + 2.0 * math.sqrt(3.0)) / 3.0


@dataclass(frozen=True)
class SaddlePoint:
    """Tilt and local data of the dominating point for a threshold c.

    lambda_c solves L'(lambda) = c, r0 is the tilted maximizer (equal to c
    by construction), sigma_sq = L''(lambda_c) > 0, and rate = L*(c)
    = c*lambda_c - L(lambda_c) >= 0.
    """

    lambda_c: float
    r0: float
    sigma_sq: float
    rate: float


@dataclass(frozen=True)
class TailEstimate:
    """A log-domain tail probability with its decomposition.

    log_prob = leading + log_prefactor, where leading = -n * rate carries
    the exponential decay and log_prefactor the algebraic factor.
    """

    log_prob: float
    method: str
    leading: float
    log_prefactor: float


@dataclass(frozen=True)
class NcgfExpansion:
    """Limit L(lambda) of the normalized c.g.f. and its 1/n coefficient."""

    limit: float
    correction: float


def r0_of_lambda(lam: float) -> float:
    """Maximizer in (-1, 1) of the spherical tilted phase lam*r + log(1-r^2)/2.

    Uses the cancellation-free form 2*lam / (1 + sqrt(1 + 4 lam^2)), which
    extends continuously through lam = 0.
    """
    return 2.0 * lam / (1.0 + math.sqrt(1.0 + 4.0 * lam * lam))


def ncgf_limit_spherical(lam: float, known_mean: bool = False) -> NcgfExpansion:
    """Limit and 1/n coefficient of the spherical normalized c.g.f."""
    s = math.sqrt(1.0 + 4.0 * lam * lam)
    # (s-1)/2 and log((1+s)/2) without cancellation at small lam
    half_sm1 = 2.0 * lam * lam / (1.0 + s)
    log_half_1ps = math.log1p(half_sm1)
    limit = half_sm1 - 0.5 * log_half_1ps
    factor = 1.0 if known_mean else 1.5
    correction = -(0.25 * math.log1p(4.0 * lam * lam) - factor * log_half_1ps)
    return NcgfExpansion(limit, correction)


def _require_gaussian_sld(rho: float, c: float | None = None) -> None:
    if abs(rho) > RHO_CONVEXITY_LIMIT:
        raise DomainError(
            f"sharp tail approximation requires |rho| <= {RHO_CONVEXITY_LIMIT:.9f} "
            f"(concavity of the tilted phase), got rho = {rho}"
        )
    if c is not None and c <= rho:
        raise DomainError(f"threshold must exceed rho (got c = {c} <= rho = {rho})")


def saddle(s: Scenario, c: float) -> SaddlePoint:
    """Saddlepoint data for P(coefficient >= c) under scenario ``s``.

    Spherical (and the rho = 0 known-mean Gaussian): closed forms
    lam_c = c/(1-c^2), sigma_c^2 = (1-c^2)^2/(1+c^2),
    rate = -(1/2) log(1-c^2).  Gaussian: the stationarity condition
    hbar'(c) = 0 is linear in lam, so lam_c = c/(1-c^2) - rho/(1-rho*c),
    sigma_c^2 = 1/|hbar''(c)|, and the rate is I_rho(c).
    """
    if not 0.0 < c < 1.0:
        raise DomainError(f"threshold must lie in (0, 1), got {c}")
    one_m_c2 = (1.0 - c) * (1.0 + c)
    if s.model is Model.GAUSSIAN_CENTERED:
        rho = s.rho
        _require_gaussian_sld(rho, c)
        lam_c = c / one_m_c2 - rho / (1.0 - rho * c)
        sigma_sq = 1.0 / abs(_hbar_dd(rho, c))
        rate = math.log1p(-rho * c) - 0.5 * (math.log1p(-rho * rho) + math.log(one_m_c2))
        return SaddlePoint(lam_c, c, sigma_sq, rate)
    lam_c = c / one_m_c2
    sigma_sq = one_m_c2 * one_m_c2 / (1.0 + c * c)
    rate = -0.5 * math.log(one_m_c2)
    return SaddlePoint(lam_c, c, sigma_sq, rate)


def tail_sld(s: Scenario, n: int, c: float) -> TailEstimate:
    """First-order sharp approximation of log P(coefficient >= c).

    log_prob = -n*rate + log(prefactor) - log(lam_c sigma_c sqrt(2 pi n)).
    """
    if n < 1:
        raise DomainError(f"sample size must be >= 1, got {n}")
    sp = saddle(s, c)
    one_m_c2 = (1.0 - c) * (1.0 + c)
    if s.model is Model.SPHERICAL_CENTERED:
        log_pref_exp = -math.log(one_m_c2) - 0.5 * math.log1p(c * c)
    elif s.model in (Model.SPHERICAL_KNOWN_MEAN, Model.GAUSSIAN_KNOWN_RHO0):
        log_pref_exp = -0.5 * (math.log(one_m_c2) + math.log1p(c * c))
    else:
        log_pref_exp = math.log(gbar_rho(s.rho, c)) - 0.5 * math.log(abs(_hbar_dd(s.rho, c)))
    log_prefactor = log_pref_exp - math.log(
        sp.lambda_c * math.sqrt(sp.sigma_sq) * math.sqrt(2.0 * math.pi * n)
    )
    leading = -n * sp.rate
    return TailEstimate(leading + log_prefactor, "sld", leading, log_prefactor)


def rate_function(s: Scenario, y: float) -> float:
    """Large-deviation rate of the coefficient at y in (-1, 1)."""
    if not abs(y) < 1.0:
        raise DomainError(f"rate function is defined on (-1, 1), got {y}")
    one_m_y2 = (1.0 - y) * (1.0 + y)
    if s.model is Model.GAUSSIAN_CENTERED:
        rho = s.rho
        return math.log1p(-rho * y) - 0.5 * (math.log1p(-rho * rho) + math.log(one_m_y2))
    return -0.5 * math.log(one_m_y2)


def rate_legendre_numeric(s: Scenario, y: float, *, tol: float = 1e-12) -> float:
    """sup over lam of lam*y - L(lam), maximized numerically.

    Golden-section search on the concave objective; self-check companion
    to the closed-form :func:`rate_function`.
    """
    if not abs(y) < 1.0:
        raise DomainError(f"rate function is defined on (-1, 1), got {y}")
    if s.model is Model.GAUSSIAN_CENTERED:
        def limit(lam):
            return ncgf_limit_gaussian(lam, s.rho).limit
    else:
        def limit(lam):
            return ncgf_limit_spherical(lam).limit

    def objective(lam):
        return lam * y - limit(lam)

    lo, hi = -1.0, 1.0
    while objective(hi) > objective(hi - 1e-3):  # expand until the max is inside
        lo, hi = hi - 1.0, 2.0 * hi
        if hi > 1e8:
            raise DomainError(f"Legendre supremum did not localize for y = {y}")
    while objective(lo) > objective(lo + 1e-3):
        lo, hi = 2.0 * lo, lo + 1.0
        if lo < -1e8:
            raise DomainError(f"Legendre supremum did not localize for y = {y}")
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1, f2 = objective(x1), objective(x2)
    while hi - lo > tol:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + invphi * (hi - lo)
            f2 = objective(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - invphi * (hi - lo)
            f1 = objective(x1)
    lam = 0.5 * (lo + hi)
    return objective(lam)


def rate_second_derivative(rho: float, y):
    """I_rho''(y) = (1+y^2)/(1-y^2)^2 - rho^2/(1-rho*y)^2, vectorized in y."""
    y = np.asarray(y, dtype=float)
    out = (1.0 + y * y) / ((1.0 - y * y) ** 2) - rho * rho / ((1.0 - rho * y) ** 2)
    return float(out) if out.ndim == 0 else out


def convexity_profile(rho: float, grid: int | np.ndarray = 2001):
    """Sample I_rho'' on a grid of (-1, 1).

    ``grid`` is either a point count (uniform grid on [-0.999, 0.999]) or
    an explicit array of abscissae.  Returns (y, I_rho''(y)).
    """
    if not abs(rho) < 1.0:
        raise DomainError(f"convexity profile requires |rho| < 1, got {rho}")
    if np.ndim(grid) == 0:
        y = np.linspace(-0.999, 0.999, int(grid))
    else:
        y = np.asarray(grid, dtype=float)
        if np.any(np.abs(y) >= 1.0):
            raise DomainError("grid points must lie in (-1, 1)")
    return y, rate_second_derivative(rho, y)


# ----------------------------------------------------------------------
# tilted phases, amplitudes, and their jets (all closed form)

def _log_linear_derivs(alpha: float, slope: float, r: float, order: int) -> list[float]:
    """Derivatives of alpha * log(1 + slope * r) up to ``order``."""
    base = 1.0 + slope * r
    out = [alpha * math.log(base)]
    for k in range(1, order + 1):
        out.append(alpha * (-1.0) ** (k - 1) * math.factorial(k - 1) * slope**k / base**k)
    return out


def h_jet(lam: float, r: float, order: int) -> DerivativeJet:
    """Jet of the spherical phase h(r) = lam*r + log(1-r^2)/2 at r."""
    left = _log_linear_derivs(0.5, -1.0, r, order)
    right = _log_linear_derivs(0.5, 1.0, r, order)
    derivs = [a + b for a, b in zip(left, right)]
    derivs[0] += lam * r
    if order >= 1:
        derivs[1] += lam
    return DerivativeJet(r, tuple(derivs))


def hbar_jet(lam: float, rho: float, r: float, order: int) -> DerivativeJet:
    """Jet of the Gaussian phase hbar(r) = lam*r - log(1-rho*r) + log(1-r^2)/2."""
    parts = [
        _log_linear_derivs(-1.0, -rho, r, order),
        _log_linear_derivs(0.5, -1.0, r, order),
        _log_linear_derivs(0.5, 1.0, r, order),
    ]
    derivs = [sum(p[k] for p in parts) for k in range(order + 1)]
    derivs[0] += lam * r
    if order >= 1:
        derivs[1] += lam
    return DerivativeJet(r, tuple(derivs))


def _hbar_d(lam: float, rho: float, r: float) -> float:
    return lam + rho / (1.0 - rho * r) - r / ((1.0 - r) * (1.0 + r))


def _hbar_dd(rho: float, r: float) -> float:
    one_m_r2 = (1.0 - r) * (1.0 + r)
    return rho * rho / (1.0 - rho * r) ** 2 - (1.0 + r * r) / (one_m_r2 * one_m_r2)


def sym_power_jet(a: float, r: float, order: int) -> DerivativeJet:
    """Jet of (1 - r^2)^{-a} = (1-r)^{-a} (1+r)^{-a} via the Leibniz rule.

    Covers the centered amplitude (a = 2) and the known-mean amplitude
    (a = 3/2).
    """
    derivs = []
    for k in range(order + 1):
        acc = 0.0
        for j in range(k + 1):
            acc += (
                math.comb(k, j)
                * _rising(a, j) * (1.0 - r) ** (-a - j)
                * (-1.0) ** (k - j) * _rising(a, k - j) * (1.0 + r) ** (-a - (k - j))
            )
        derivs.append(acc)
    return DerivativeJet(r, tuple(derivs))


def _rising(a: float, k: int) -> float:
    out = 1.0
    for i in range(k):
        out *= a + i
    return out


def gbar_rho(rho: float, r: float) -> float:
    """Tilted Gaussian amplitude (1-rho^2)^{-1/2} (1-rho r)^{3/2} (1-r^2)^{-2}."""
    one_m_r2 = (1.0 - r) * (1.0 + r)
    return (1.0 - rho * rho) ** -0.5 * (1.0 - rho * r) ** 1.5 * one_m_r2**-2.0


def hbar_root(lam: float, rho: float) -> float:
    """Maximizer of hbar in (-1, 1), by bracketed search on hbar'.

    Valid for |rho| <= RHO_CONVEXITY_LIMIT, where hbar is strictly concave
    so the stationary point is unique.
    """
    _require_gaussian_sld(rho)
    return find_interior_max(
        lambda r: _hbar_d(lam, rho, r),
        (-1.0, 1.0),
        d2phase=lambda r: _hbar_dd(rho, r),
        f_scale=1.0 + abs(lam),
    )


def ncgf_limit_gaussian(lam: float, rho: float) -> NcgfExpansion:
    """Limit and 1/n coefficient of the Gaussian normalized c.g.f.

    limit = hbar(r0) + log(1-rho^2)/2 at the tilted maximizer r0; the 1/n
    coefficient is log gbar_rho(r0) - log|hbar''(r0)|/2, which at the
    saddle tilt is exactly the log prefactor exponent of the tail formula.
    """
    r0 = hbar_root(lam, rho)
    one_m_r02 = (1.0 - r0) * (1.0 + r0)
    limit = (
        lam * r0
        - math.log1p(-rho * r0)
        + 0.5 * math.log(one_m_r02)
        + 0.5 * math.log1p(-rho * rho)
    )
    correction = math.log(gbar_rho(rho, r0)) - 0.5 * math.log(abs(_hbar_dd(rho, r0)))
    return NcgfExpansion(limit, correction)
