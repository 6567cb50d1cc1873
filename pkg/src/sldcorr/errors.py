"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NonConvergenceError(RuntimeError):
    """An iterative computation failed to reach its tolerance.

    Carries ``partial``: the best value obtained before giving up, when one
    exists (``None`` otherwise).
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class QuadratureError(NonConvergenceError):
    """Adaptive quadrature exhausted its subdivision budget.

    ``partial`` holds the :class:`~sldcorr.quadrature.QuadratureResult`
    accumulated so far.
    """


class JetError(ValueError):
    """A derivative jet is malformed or too short for the requested order."""
