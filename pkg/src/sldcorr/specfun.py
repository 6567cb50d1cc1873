"""Special functions and combinatorial polynomials.

Scalar log-gamma helpers, odd double factorials, partial/complete
exponential Bell polynomials, and the Gauss hypergeometric series for the
parameter family this package actually meets (a = b = 1/2, c growing with
the sample size, 0 < z < 1).  Everything is pure and reentrant.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .errors import DomainError, NonConvergenceError

__all__ = [
    "log_gamma",
    "log_gamma_ratio",
    "double_factorial_odd",
    "bell_partial",
    "bell_complete",
    "hyp2f1",
    "hyp2f1_temme",
]


def log_gamma(x: float) -> float:
    """Natural logarithm of Gamma(x) for x > 0.

    Delegates to the C library's ``lgamma`` (a minimax approximation with
    Stirling behaviour for large argument), restricted to the positive half
    line, which is the only region the package uses.

    Raises
    ------
    DomainError
        If ``x <= 0``.
    """
    if not x > 0.0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def log_gamma_ratio(a: float, b: float) -> float:
    """log(Gamma(a) / Gamma(b)) for a, b > 0.

    Computed as a difference of log-gammas, so the ratio never overflows
    even when both arguments are of order 1e6.
    """
    if not (a > 0.0 and b > 0.0):
        raise DomainError(f"log_gamma_ratio requires positive arguments, got ({a}, {b})")
    return math.lgamma(a) - math.lgamma(b)


def double_factorial_odd(m: int) -> int:
    """(2m + 1)!! = 1 * 3 * 5 * ... * (2m + 1), exactly.

    Python integers are unbounded, so the result is exact for any m >= 0;
    callers that need a float should convert (and may overflow there).
    """
    if m < 0 or m != int(m):
        raise DomainError(f"double_factorial_odd requires an integer m >= 0, got {m}")
    out = 1
    for i in range(3, 2 * int(m) + 2, 2):
        out *= i
    return out


def bell_partial(n: int, k: int, x: Sequence[float]) -> float:
    """Partial exponential Bell polynomial B_{n,k}(x_1, ..., x_{n-k+1}).

    Evaluated through the standard recurrence

        B_{n,k} = sum_{j=1}^{n-k+1} C(n-1, j-1) * x_j * B_{n-j,k-1},

    which is numerically stable and O(n^2 k), against B_{0,0} = 1 and
    B_{n,0} = 0 for n >= 1.  The defining sum over set partitions is
    exponential and is kept only as a test oracle.

    Parameters
    ----------
    n, k : int
        Polynomial indices, 0 <= k <= n.
    x : sequence of float
        Arguments x_1, ..., x_m with m >= n - k + 1 (1-based in the usual
        notation; ``x[0]`` is x_1).
    """
    if k < 0 or n < 0 or k > n:
        raise DomainError(f"bell_partial requires 0 <= k <= n, got (n={n}, k={k})")
    if k == 0:
        return 1.0 if n == 0 else 0.0
    need = n - k + 1
    if len(x) < need:
        raise DomainError(
            f"bell_partial(n={n}, k={k}) needs at least {need} arguments, got {len(x)}"
        )
    # table[m][j] = B_{m,j}; only entries reachable from (n, k) are filled,
    # which caps the argument index at n - k + 1.
    table = [[0.0] * (k + 1) for _ in range(n + 1)]
    table[0][0] = 1.0
    for m in range(1, n + 1):
        for j in range(max(1, k - (n - m)), min(m, k) + 1):
            acc = 0.0
            for i in range(1, m - j + 2):
                acc += math.comb(m - 1, i - 1) * x[i - 1] * table[m - i][j - 1]
            table[m][j] = acc
    return table[n][k]


def bell_complete(n: int, x: Sequence[float]) -> float:
    """Complete exponential Bell polynomial B_n = sum_k B_{n,k}(x)."""
    if n == 0:
        return 1.0
    return sum(bell_partial(n, k, x) for k in range(1, n + 1))


def hyp2f1(a: float, b: float, c: float, z, *, rtol: float = 1e-14, max_terms: int = 1_000_000):
    """Gauss hypergeometric function 2F1(a, b; c; z) by direct series.

    The series is summed with the term-ratio recurrence

        t_{k+1} = t_k * (a+k)(b+k) / ((c+k)(k+1)) * z,

    which converges for |z| < 1.  For the family used by the sampling
    densities (a = b = 1/2, c = n - 1/2, z in (0, 1)) all terms are
    positive and the large c suppresses the early terms, so convergence is
    fast; no Euler/Pfaff transformation is needed.

    Parameters
    ----------
    a, b, c : float
        Series parameters; ``c`` must not be a non-positive integer.
    z : float or ndarray
        Argument(s), each < 1 in absolute value.

    Returns
    -------
    float or ndarray
        Scalar for scalar ``z``, array for array ``z``.

    Raises
    ------
    DomainError
        If ``|z| >= 1`` or ``c`` is a non-positive integer.
    NonConvergenceError
        If ``max_terms`` terms do not reach ``rtol`` relative accuracy.
    """
    if c <= 0 and c == int(c):
        raise DomainError(f"hyp2f1: c must not be a non-positive integer, got c={c}")
    z_arr = np.asarray(z, dtype=float)
    if np.any(np.abs(z_arr) >= 1.0):
        raise DomainError("hyp2f1: series requires |z| < 1")

    term = np.ones_like(z_arr)
    total = np.ones_like(z_arr)
    for k in range(max_terms):
        term = term * ((a + k) * (b + k) / ((c + k) * (k + 1.0))) * z_arr
        total = total + term
        if np.max(np.abs(term)) <= rtol * np.min(np.abs(total)):
            break
    else:
        raise NonConvergenceError(
            f"hyp2f1({a}, {b}; {c}; z) did not converge within {max_terms} terms",
            partial=total if np.ndim(z) else float(total),
        )
    return float(total) if np.ndim(z) == 0 else total


def hyp2f1_temme(rho_r: float, n: float) -> float:
    """Two-term large-c asymptotic bracket for 2F1(1/2, 1/2; n + 1/2; (1+rho_r)/2).

    Returns 1/sqrt(n) + (2 + rho_r) / (8 n^{3/2}), i.e. the asymptotic
    series *without* the Gamma(n + 1/2)/Gamma(n) front factor, so callers
    can combine that factor in log space.
    """
    return 1.0 / math.sqrt(n) + (2.0 + rho_r) / (8.0 * n ** 1.5)
