"""Globally adaptive Gauss-Legendre quadrature carried out in log space.

Integrands are supplied as vectorized *log* functions and every
accumulation goes through log-sum-exp, so integrals whose values underflow
float64 by hundreds of orders of magnitude (densities raised to the sample
size, exponentially tilted integrands) come out with full relative
accuracy in the log domain.

The driver keeps a worklist of panels, each carrying a 15-point value and
a 7-vs-15-point error estimate, and repeatedly splits the worst panel
until the total error estimate is below ``rel_tol`` times the running
total.  Note that the absolute error of a log value is the relative error
of the underlying integral, which is why ``QuadratureResult`` quotes its
error bound on ``log_value``.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import QuadratureError

__all__ = ["QuadratureResult", "log_quad"]

_NODES7, _WEIGHTS7 = np.polynomial.legendre.leggauss(7)
_NODES15, _WEIGHTS15 = np.polynomial.legendre.leggauss(15)
_LOGW7 = np.log(_WEIGHTS7)
_LOGW15 = np.log(_WEIGHTS15)

_NEG_INF = float("-inf")


@dataclass(frozen=True)
class QuadratureResult:
    """Value of a positive integral in the log domain.

    ``abs_error_estimate`` bounds the absolute error of ``log_value``,
    i.e. the relative error of the integral itself.
    """

    log_value: float
    abs_error_estimate: float
    subdivisions: int


def _logsumexp(values) -> float:
    arr = np.asarray(values, dtype=float)
    m = np.max(arr) if arr.size else _NEG_INF
    if m == _NEG_INF:
        return _NEG_INF
    return float(m + np.log(np.sum(np.exp(arr - m))))


def _panel(log_f: Callable, a: float, b: float) -> tuple[float, float]:
    """15-point log value and log of the |GL7 - GL15| error estimate."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    xs = np.concatenate([mid + half * _NODES7, mid + half * _NODES15])
    logs = np.asarray(log_f(xs), dtype=float)
    if np.any(np.isnan(logs)) or np.any(logs == np.inf):
        raise QuadratureError(f"integrand returned nan/inf on panel [{a}, {b}]")
    log_half = math.log(half)
    v7 = _logsumexp(logs[:7] + _LOGW7) + log_half
    v15 = _logsumexp(logs[7:] + _LOGW15) + log_half
    m = max(v7, v15)
    if m == _NEG_INF:
        return _NEG_INF, _NEG_INF
    diff = abs(math.exp(v7 - m) - math.exp(v15 - m))
    log_err = _NEG_INF if diff == 0.0 else m + math.log(diff)
    return v15, log_err


def log_quad(
    log_f: Callable,
    a: float,
    b: float,
    *,
    rel_tol: float = 1e-11,
    initial_panels: int = 8,
    max_panels: int = 2048,
) -> QuadratureResult:
    """Adaptive quadrature of exp(log_f) over [a, b], in log space.

    Parameters
    ----------
    log_f : callable
        Vectorized log-integrand: ndarray -> ndarray.  Values of -inf
        (integrand zero) are fine; nan or +inf abort with an error.
    a, b : float
        Finite integration limits, a < b.
    rel_tol : float
        Target relative error of the integral (= absolute error of the
        returned ``log_value``).
    initial_panels : int
        Uniform panels laid down before adaptivity starts.
    max_panels : int
        Subdivision budget.

    Raises
    ------
    QuadratureError
        If the budget is exhausted before the tolerance is met; the
        exception's ``partial`` attribute carries the best result so far.
    """
    if not b > a:
        raise QuadratureError(f"empty or inverted interval [{a}, {b}]")
    edges = np.linspace(a, b, initial_panels + 1)
    heap: list[tuple[float, float, float, float, float]] = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        v, e = _panel(log_f, lo, hi)
        heapq.heappush(heap, (-e, lo, hi, v, e))

    while True:
        total = _logsumexp([item[3] for item in heap])
        err = _logsumexp([item[4] for item in heap])
        converged = err == _NEG_INF or (total > _NEG_INF and err <= math.log(rel_tol) + total)
        if err == _NEG_INF:
            abs_err = 0.0
        elif total == _NEG_INF or err - total > 700.0:
            abs_err = math.inf
        else:
            abs_err = math.exp(err - total)
        if converged:
            return QuadratureResult(total, abs_err, len(heap))
        if len(heap) >= max_panels:
            raise QuadratureError(
                f"quadrature did not reach rel_tol={rel_tol} within {max_panels} panels "
                f"(error estimate {abs_err:.3e})",
                partial=QuadratureResult(total, abs_err, len(heap)),
            )
        _, lo, hi, _, _ = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        for seg in ((lo, mid), (mid, hi)):
            v, e = _panel(log_f, *seg)
            heapq.heappush(heap, (-e, seg[0], seg[1], v, e))
