"""Laplace-method asymptotics for integrals with an interior phase maximum.

For I(x) = int_a^b exp(x*p(t)) q(t) dt with p maximal at an interior point
t0 (p'(t0) = 0, p''(t0) < 0), the expansion

    I(x) = e^{x p(t0)} ( c_0/sqrt(x) + c_1/(2! x^{3/2}) + ...
                         + c_N/((2N)! x^{N+1/2}) + O(x^{-(N+3/2)}) )

holds with coefficients built from the derivatives of p and q at t0:

    c_N = sqrt(2*pi/|p''|) * sum_{k=0}^{2N} C(2N, k) q^{(2N-k)}
          * sum_m B_{k,m}(p^{(3)}/(2*3), ..., p^{(k-m+3)}/((k-m+2)(k-m+3)))
          * (2m + 2N - 1)!! / |p''|^{m+N}.

Derivative jets are supplied analytically by callers; the integrands in
this package all have closed-form derivatives, so there is no automatic
differentiation.  Callers are responsible for the integrability of the
tails (the expansion only sees local data at t0).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

from .errors import DomainError, JetError
from .specfun import bell_partial, double_factorial_odd

__all__ = [
    "DerivativeJet",
    "find_interior_max",
    "laplace_coefficient",
    "laplace_coefficients",
    "laplace_expand",
]

# |d1| below this multiple of (1 + |d2|) counts as a stationary point
_STATIONARY_RTOL = 1e-8


@dataclass(frozen=True)
class DerivativeJet:
    """Derivatives of a smooth function at a point.

    ``derivs[j]`` is the j-th derivative at ``point`` (``derivs[0]`` the
    value), so the jet order is ``len(derivs) - 1``.
    """

    point: float
    derivs: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "derivs", tuple(float(d) for d in self.derivs))

    @property
    def order(self) -> int:
        return len(self.derivs) - 1

    def require_order(self, order: int, role: str) -> None:
        if self.order < order:
            raise JetError(f"{role} jet has order {self.order}, need >= {order}")

    def require_phase(self, order: int) -> None:
        """Validate this jet as a phase: stationary with negative curvature."""
        self.require_order(max(order, 2), "phase")
        d1, d2 = self.derivs[1], self.derivs[2]
        if abs(d1) > _STATIONARY_RTOL * (1.0 + abs(d2)):
            raise JetError(f"phase jet is not stationary: p'(t0) = {d1}")
        if not d2 < 0.0:
            raise JetError(f"phase jet needs p''(t0) < 0, got {d2}")


def find_interior_max(
    dphase: Callable[[float], float],
    bracket: tuple[float, float],
    *,
    d2phase: Callable[[float], float] | None = None,
    tol: float = 1e-12,
    f_scale: float = 1.0,
    max_iter: int = 200,
) -> float:
    """Locate the interior maximum of a phase from its first derivative.

    Bisection on ``dphase`` with secant polishing, run until the
    derivative is below ``tol * f_scale`` in absolute value.  The bracket
    is an open interval: endpoints are inset by a machine-relative amount
    before evaluation, so derivatives that blow up at the ends (as the
    log-barrier phases here do) are fine.

    Parameters
    ----------
    dphase : callable
        First derivative of the phase.
    bracket : (float, float)
        Open interval containing the stationary point; ``dphase`` must
        change sign across it.
    d2phase : callable, optional
        Second derivative; if omitted, concavity at the root is checked by
        a central finite difference of ``dphase``.
    tol, f_scale : float
        Convergence demands |dphase(t0)| <= tol * f_scale.

    Raises
    ------
    DomainError
        If ``dphase`` has the same sign at both (inset) endpoints.

    Warns
    -----
    UserWarning
        If the phase is not concave at the located stationary point.
    """
    lo, hi = bracket
    if not lo < hi:
        raise DomainError(f"invalid bracket {bracket}")
    inset = 1e-12 * (hi - lo)
    a, b = lo + inset, hi - inset
    fa, fb = dphase(a), dphase(b)
    if fa == 0.0:
        root = a
    elif fb == 0.0:
        root = b
    elif math.copysign(1.0, fa) == math.copysign(1.0, fb):
        raise DomainError(
            f"derivative does not change sign on {bracket}: f({a}) = {fa}, f({b}) = {fb}"
        )
    else:
        root = _bisect_secant(dphase, a, b, fa, fb, tol * f_scale, max_iter)

    curv = d2phase(root) if d2phase is not None else _central_dd(dphase, root, hi - lo)
    if not curv < 0.0:
        warnings.warn(
            f"phase is not concave at the stationary point t0 = {root} (p'' = {curv})",
            stacklevel=2,
        )
    return root


def _bisect_secant(f, a, b, fa, fb, atol, max_iter):
    # plain bisection to shrink the bracket, then secant steps clipped to it
    for _ in range(max_iter):
        mid = 0.5 * (a + b)
        fmid = f(mid)
        if abs(fmid) <= atol:
            return mid
        if math.copysign(1.0, fmid) == math.copysign(1.0, fa):
            a, fa = mid, fmid
        else:
            b, fb = mid, fmid
        # secant through the current bracket endpoints
        if fb != fa:
            s = b - fb * (b - a) / (fb - fa)
            if a < s < b:
                fs = f(s)
                if abs(fs) <= atol:
                    return s
                if math.copysign(1.0, fs) == math.copysign(1.0, fa):
                    a, fa = s, fs
                else:
                    b, fb = s, fs
        if b - a <= 4.0 * math.ulp(max(abs(a), abs(b), 1.0)):
            return 0.5 * (a + b)
    return 0.5 * (a + b)


def _central_dd(df, t, span):
    h = 1e-6 * span
    return (df(t + h) - df(t - h)) / (2.0 * h)


def laplace_coefficient(N: int, phase: DerivativeJet, amp: DerivativeJet) -> float:
    """Expansion coefficient c_N from phase and amplitude jets at t0.

    Needs the phase jet to order 2N + 2 and the amplitude jet to order 2N.
    ``c_0`` reduces to sqrt(2*pi/|p''(t0)|) * q(t0) along the same
    arithmetic path as the general formula.
    """
    if N < 0:
        raise DomainError(f"laplace_coefficient requires N >= 0, got {N}")
    phase.require_phase(2 * N + 2)
    amp.require_order(2 * N, "amplitude")
    p = phase.derivs
    q = amp.derivs
    a2 = abs(p[2])

    total = 0.0
    for k in range(2 * N + 1):
        inner = 0.0
        # B_{k,0} vanishes for k >= 1; skipping it keeps the needed phase
        # order at 2N + 2 (arguments reach p^{(k-m+3)} with m >= 1), and
        # B_{0,0} = 1 takes no arguments at all.
        for m in range(0 if k == 0 else 1, k + 1):
            args = [] if k == 0 else [
                p[j + 2] / ((j + 1.0) * (j + 2.0)) for j in range(1, k - m + 2)
            ]
            dfo = 1.0 if m + N == 0 else float(double_factorial_odd(m + N - 1))
            inner += bell_partial(k, m, args) * dfo / a2 ** (m + N)
        total += math.comb(2 * N, k) * q[2 * N - k] * inner
    return math.sqrt(2.0 * math.pi / a2) * total


def laplace_coefficients(N: int, phase: DerivativeJet, amp: DerivativeJet) -> list[float]:
    """Coefficients c_0, ..., c_N as a list."""
    return [laplace_coefficient(j, phase, amp) for j in range(N + 1)]


def laplace_expand(x: float, phase: DerivativeJet, amp: DerivativeJet, N: int = 0) -> float:
    """Log of the order-N Laplace expansion of int e^{x p(t)} q(t) dt.

    Returns log( e^{x p(t0)} * sum_{j<=N} c_j / ((2j)! x^{j+1/2}) ); the
    neglected remainder is O(x^{-(N+3/2)}) relative to e^{x p(t0)}.

    Raises
    ------
    DomainError
        If ``x <= 0``, or if the partial sum is not positive (the
        expansion is unusable at this x and order; a larger x or different
        order may still work).
    """
    if not x > 0.0:
        raise DomainError(f"laplace_expand requires x > 0, got {x}")
    coeffs = laplace_coefficients(N, phase, amp)
    partial = 0.0
    for j, cj in enumerate(coeffs):
        partial += cj / (math.factorial(2 * j) * x ** (j + 0.5))
    if not partial > 0.0:
        raise DomainError(
            f"Laplace partial sum is non-positive ({partial}) at x = {x}, N = {N}; "
            "expansion unusable here"
        )
    return x * phase.derivs[0] + math.log(partial)
