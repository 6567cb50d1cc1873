"""Exact sampling densities of the correlation coefficient, and the
quadrature oracle built on them.

The mean-centered spherical coefficient has density

    f_n(r) = Gamma((n-1)/2) / (sqrt(pi) Gamma((n-2)/2)) * (1 - r^2)^{(n-4)/2}

on (-1, 1) (equivalently, sqrt(n-2) r / sqrt(1-r^2) is Student t with
n - 2 degrees of freedom); the known-mean variant gains one degree of
freedom, with exponent (n-3)/2 and the matching constant.  The bivariate
Gaussian coefficient with correlation rho has, for sample size n,

    f_n(r) = (n-2) Gamma(n-1) / (Gamma(n-1/2) sqrt(2*pi))
             * (1-rho^2)^{(n-1)/2} (1-rho r)^{-n+3/2} (1-r^2)^{(n-4)/2}
             * 2F1(1/2, 1/2; n-1/2; (1+rho r)/2).

The Gaussian constant is not taken on faith: the density is renormalized
numerically (cached per (n, rho)) and a warning is logged if the analytic
constant disagrees by more than 1e-3.  The Gaussian known-mean coefficient
at rho = 0 is the inner product of two independent uniform directions on
the sphere and has exactly the spherical known-mean law.

Every density here requires n >= 5 so that it vanishes at r = +-1.
Tail probabilities and moment generating values are computed by the
log-space adaptive quadrature of :mod:`sldcorr.quadrature` after the
variable change r = 1 - u^2 (and its mirror), which removes the algebraic
endpoint behaviour of (1 - r^2)^alpha.
"""

from __future__ import annotations

import logging
import math
import threading

import numpy as np

from .errors import DomainError
from .quadrature import QuadratureResult, log_quad
from .scenarios import Model, Scenario
from .specfun import hyp2f1, log_gamma

__all__ = ["log_density", "tail_exact", "mgf_exact"]

logger = logging.getLogger(__name__)

_MIN_N = 5

# analytic-vs-numeric normalization disagreement worth reporting
_NORM_WARN = 1e-3

_norm_cache: dict[tuple[str, int, float], float] = {}
_norm_lock = threading.Lock()


def _require_n(n: int) -> None:
    if n < _MIN_N or n != int(n):
        raise DomainError(f"sample size must be an integer >= {_MIN_N}, got {n}")


def _log_density_raw(s: Scenario, n: int, r):
    """Log density before any numeric renormalization; vectorized in r.

    Defined on the closed interval: at r = +-1 every density (n >= 5)
    vanishes and the log is -inf.
    """
    r = np.asarray(r, dtype=float)
    with np.errstate(divide="ignore"):
        log_1mr2 = np.log((1.0 - r) * (1.0 + r))
        if s.model is Model.SPHERICAL_CENTERED:
            const = log_gamma((n - 1) / 2.0) - 0.5 * math.log(math.pi) - log_gamma((n - 2) / 2.0)
            return const + ((n - 4) / 2.0) * log_1mr2
        if s.model in (Model.SPHERICAL_KNOWN_MEAN, Model.GAUSSIAN_KNOWN_RHO0):
            const = log_gamma(n / 2.0) - 0.5 * math.log(math.pi) - log_gamma((n - 1) / 2.0)
            return const + ((n - 3) / 2.0) * log_1mr2
        # gaussian; kept on the hypergeometric form even at rho = 0 so the
        # rho = 0 agreement with the spherical density is a real cross-check
        rho = s.rho
        const = (
            math.log(n - 2.0)
            + log_gamma(n - 1.0)
            - log_gamma(n - 0.5)
            - 0.5 * math.log(2.0 * math.pi)
            + ((n - 1) / 2.0) * math.log1p(-rho * rho)
        )
        hyp = hyp2f1(0.5, 0.5, n - 0.5, 0.5 * (1.0 + rho * r))
        return (
            const
            + (-n + 1.5) * np.log1p(-rho * r)
            + ((n - 4) / 2.0) * log_1mr2
            + np.log(hyp)
        )


def _log_norm_offset(s: Scenario, n: int) -> float:
    """log of the numeric integral of the raw density (0 when it is exact).

    Only the Gaussian density is renormalized; the spherical constants are
    exact beta integrals and are left untouched so that the normalization
    tests exercise them for real.
    """
    if s.model is not Model.GAUSSIAN_CENTERED:
        return 0.0
    key = (s.model.value, int(n), float(s.rho))
    with _norm_lock:
        cached = _norm_cache.get(key)
    if cached is not None:
        return cached
    offset = _log_integral_full(lambda r: _log_density_raw(s, n, r))
    if abs(offset) > _NORM_WARN:
        logger.warning(
            "gaussian density constant off by exp(%.3e) at n=%d rho=%g; renormalizing",
            offset, n, s.rho,
        )
    with _norm_lock:
        _norm_cache[key] = offset
    return offset


def log_density(s: Scenario, n: int, r):
    """Natural log of the density of the coefficient at r, sample size n.

    ``r`` may be a scalar or ndarray with entries in [-1, 1]; the density
    vanishes at the closed endpoints (log -inf), and |r| > 1 is rejected.
    """
    _require_n(n)
    r_arr = np.asarray(r, dtype=float)
    if np.any(np.abs(r_arr) > 1.0):
        raise DomainError("log_density requires |r| <= 1")
    out = _log_density_raw(s, n, r_arr) - _log_norm_offset(s, n)
    return float(out) if np.ndim(r) == 0 else out


def _log_integral_full(log_f, **quad_kw) -> float:
    """log of int_{-1}^{1} exp(log_f(r)) dr via r = +-(1 - u^2)."""
    def right(u):
        u = np.asarray(u)
        return log_f(1.0 - u * u) + np.log(2.0 * u)

    def left(u):
        u = np.asarray(u)
        return log_f(u * u - 1.0) + np.log(2.0 * u)

    parts = [log_quad(right, 0.0, 1.0, **quad_kw), log_quad(left, 0.0, 1.0, **quad_kw)]
    m = max(p.log_value for p in parts)
    if m == float("-inf"):
        return m
    return m + math.log(sum(math.exp(p.log_value - m) for p in parts))


def tail_exact(s: Scenario, n: int, c: float, *, rel_tol: float = 1e-11) -> QuadratureResult:
    """log P(coefficient >= c) by adaptive quadrature of the exact density.

    ``c`` must lie in (0, 1).  The substitution r = 1 - u^2 maps [c, 1)
    onto (0, sqrt(1-c)] and smooths the endpoint, after which the panels
    accumulate in log space.
    """
    _require_n(n)
    if not 0.0 < c < 1.0:
        raise DomainError(f"threshold must lie in (0, 1), got {c}")

    def integrand(u):
        u = np.asarray(u)
        return log_density(s, n, 1.0 - u * u) + np.log(2.0 * u)

    return log_quad(integrand, 0.0, math.sqrt(1.0 - c), rel_tol=rel_tol)


def mgf_exact(s: Scenario, n: int, lam: float, *, rel_tol: float = 1e-11) -> float:
    """Normalized cumulant generating value (1/n) log E exp(n * lam * r).

    The tilted integrand exp(n*lam*r) f_n(r) concentrates sharply for
    large n*lam; the adaptive panels in log space follow the peak without
    underflow.
    """
    _require_n(n)

    def log_f(r):
        return n * lam * np.asarray(r) + log_density(s, n, r)

    # denser initial panels: the tilt can hide the peak from a coarse scan
    return _log_integral_full(log_f, rel_tol=rel_tol, initial_panels=16) / n
